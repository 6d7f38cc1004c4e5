"""Integer codes shared by the quadrature backends.

The backends stay njit-friendly by taking plain ints instead of enums.
"""

# integrand family
WHICH_PP = 0  # plates: z**2 * (t1/(1-t1) + t2/(1-t2))
WHICH_PL = 1  # sphere-plate: z * (log1p(-t1) + log1p(-t2))

# reflection mode; param carries the mode's single parameter
MODE_FINITE = 0  # finite permittivity, param = eps(i xi_n)
MODE_PERFECT = 1  # perfect conductor, both channels fully reflecting
MODE_ZERO_PLASMA = 2  # x -> 0 plasma limit, param = 2 a omega_p / c
MODE_ZERO_TM_ONLY = 3  # x -> 0 with the TE channel absent
