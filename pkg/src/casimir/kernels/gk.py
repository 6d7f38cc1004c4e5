"""Gauss-Kronrod 7-15 nodes and weights on [-1, 1].

Standard QUADPACK dqk15 constants.  The rule is open (no endpoint is
ever sampled), so integrands with an integrable endpoint singularity,
like the z ln(1 - r**2 e**-z) form at z = 0, are safe to evaluate.

XGK lists the positive abscissae from the outermost inward; the Gauss
points sit at the odd indices (1, 3, 5) plus the center node.
"""

import numpy as np

# positive Kronrod abscissae, outermost first; the center node 0 is implicit
XGK = (
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
)

# Kronrod weights for XGK followed by the center weight
WGK = (
    0.0229353220105292,
    0.0630920926299786,
    0.1047900103222502,
    0.1406532597155259,
    0.1690047266392679,
    0.1903505780647854,
    0.2044329400752989,
    0.2094821410847278,
)

# Gauss weights for XGK[1], XGK[3], XGK[5] and the center node
WG = (
    0.1294849661688697,
    0.2797053914892767,
    0.3818300505051189,
    0.4179591836734694,
)

# Full 15-node layout for vectorized evaluation: nodes ascending,
# Kronrod weights aligned, Gauss weights padded with zeros at the
# Kronrod-only positions.
NODES15 = np.array([-x for x in XGK] + [0.0] + [x for x in reversed(XGK)])
WGK15 = np.array(list(WGK[:7]) + [WGK[7]] + list(reversed(WGK[:7])))
_wg15 = [0.0] * 15
for _i, _w in zip((1, 3, 5), WG[:3]):
    _wg15[_i] = _w
    _wg15[14 - _i] = _w
_wg15[7] = WG[3]
WG15 = np.array(_wg15)
del _i, _w, _wg15
