"""Dielectric permittivity models along the imaginary frequency axis.

Everything here works with epsilon(i xi) for xi > 0, which is real and
monotonically decreasing toward 1 for causal materials.  The perfect
conductor is represented symbolically (``permittivity`` returns
``math.inf``); callers branch on it instead of plugging a large number
into reflection formulas.

The n = 0 Matsubara term must never be obtained by evaluating a model
at a tiny frequency.  ``zero_mode_class`` reports which analytic x -> 0
limit applies instead.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from typing import IO, Iterable, Union

import numpy as np

# Default aluminum parameters (rad/s).  The plasma frequency is the
# value the reference computations use; the relaxation frequency is a
# literature-typical stand-in, and absolute forces of dissipative runs
# are sensitive to it at the tens-of-percent level.
AL_OMEGA_P = 1.92e16
AL_GAMMA = 9.6e13


@dataclass(frozen=True)
class PerfectConductor:
    """Ideal metal: unit reflectivity at all frequencies."""


@dataclass(frozen=True)
class Plasma:
    """Collisionless plasma, eps(i xi) = 1 + omega_p**2 / xi**2."""

    omega_p: float  # plasma frequency, rad/s

    def __post_init__(self):
        if not (self.omega_p > 0.0) or not math.isfinite(self.omega_p):
            raise ValueError(f"plasma frequency must be positive, got {self.omega_p!r}")


@dataclass(frozen=True)
class Drude:
    """Dissipative metal, eps(i xi) = 1 + omega_p**2 / (xi * (xi + gamma)).

    gamma must be strictly positive; use :func:`drude` to build a model
    from possibly-zero relaxation, it falls back to :class:`Plasma`.
    """

    omega_p: float  # plasma frequency, rad/s
    gamma: float  # relaxation frequency, rad/s

    def __post_init__(self):
        if not (self.omega_p > 0.0) or not math.isfinite(self.omega_p):
            raise ValueError(f"plasma frequency must be positive, got {self.omega_p!r}")
        if not (self.gamma > 0.0) or not math.isfinite(self.gamma):
            raise ValueError(
                f"relaxation frequency must be positive, got {self.gamma!r}; "
                "use drude() to normalize gamma = 0 to a Plasma model"
            )


class TableParseError(ValueError):
    """Raised on malformed permittivity tables; carries the line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class PermittivityTable:
    """Sampled eps(i xi), interpolated log-log between samples.

    Inside the sampled range eps - 1 is interpolated linearly in
    log-log coordinates, so sample points are reproduced exactly.
    Below the range the curve continues as the plasma tail
    1 + w_fit**2 / xi**2 with w_fit fitted to the two lowest samples;
    above the range eps = 1.
    """

    xi: np.ndarray  # sampled imaginary frequencies, rad/s, strictly increasing
    eps: np.ndarray  # permittivity at the samples, >= 1, non-increasing
    omega_p_fit: float  # plasma frequency of the low-frequency tail, rad/s

    def __call__(self, xi: float) -> float:
        if xi < self.xi[0]:
            return 1.0 + (self.omega_p_fit / xi) ** 2
        if xi > self.xi[-1]:
            return 1.0
        log_em1 = np.interp(math.log(xi), self._log_xi, self._log_em1)
        return 1.0 + math.exp(log_em1)

    @property
    def _log_xi(self):
        return np.log(self.xi)

    @property
    def _log_em1(self):
        # eps == 1 exactly would have no log; clamp to keep the
        # interpolation defined (the sample still reads back as ~1).
        return np.log(np.maximum(self.eps - 1.0, 5e-324))


@dataclass(frozen=True)
class Tabulated:
    """Metal described by a sampled permittivity table."""

    table: PermittivityTable


DielectricModel = Union[PerfectConductor, Plasma, Drude, Tabulated]


def drude(omega_p: float, gamma: float) -> Union[Plasma, Drude]:
    """Build a dissipative model, normalizing gamma = 0 to :class:`Plasma`."""
    if gamma < 0.0:
        raise ValueError(f"relaxation frequency must be >= 0, got {gamma!r}")
    if gamma == 0.0:
        return Plasma(omega_p)
    return Drude(omega_p, gamma)


def permittivity(model: DielectricModel, xi: float) -> float:
    """Evaluate eps(i xi) for xi > 0.

    Returns ``math.inf`` for the perfect conductor; callers must branch
    on it rather than feed it into arithmetic.
    """
    if not (xi > 0.0):
        raise ValueError(f"imaginary frequency must be positive, got {xi!r}")
    if isinstance(model, PerfectConductor):
        return math.inf
    if isinstance(model, Plasma):
        return 1.0 + (model.omega_p / xi) ** 2
    if isinstance(model, Drude):
        return 1.0 + model.omega_p**2 / (xi * (xi + model.gamma))
    if isinstance(model, Tabulated):
        return model.table(xi)
    raise TypeError(f"unknown dielectric model {model!r}")


class ZeroModeClass(enum.Enum):
    """Analytic x -> 0 behavior of the transverse-electric reflection.

    The transverse-magnetic reflection reaches the perfect-conductor
    value at zero frequency for every metal model; the classes differ
    only in the TE channel.
    """

    TE_PERFECT = "te-perfect"  # perfect conductor: TE survives fully
    TE_PLASMA = "te-plasma"  # plasma-like tail: TE keeps a finite remnant
    TE_ABSENT = "te-absent"  # dissipative (gamma > 0): TE drops out


def zero_mode_class(model: DielectricModel) -> ZeroModeClass:
    if isinstance(model, PerfectConductor):
        return ZeroModeClass.TE_PERFECT
    if isinstance(model, Plasma):
        return ZeroModeClass.TE_PLASMA
    if isinstance(model, Drude):
        return ZeroModeClass.TE_ABSENT
    if isinstance(model, Tabulated):
        # the low-frequency tail of a metallic table is plasma-like by
        # construction, with the fitted frequency as its scale
        return ZeroModeClass.TE_PLASMA
    raise TypeError(f"unknown dielectric model {model!r}")


def model_plasma_frequency(model: DielectricModel) -> float:
    """Plasma frequency governing the model's low-frequency response.

    inf for a perfect conductor; the fitted tail value for a table.
    """
    if isinstance(model, PerfectConductor):
        return math.inf
    if isinstance(model, (Plasma, Drude)):
        return model.omega_p
    if isinstance(model, Tabulated):
        return model.table.omega_p_fit
    raise TypeError(f"unknown dielectric model {model!r}")


def _parse_lines(lines: Iterable[str]):
    xi_vals = []
    eps_vals = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise TableParseError(
                f"expected two comma-separated columns, got {raw.strip()!r}", line_no
            )
        try:
            xi = float(parts[0])
            eps = float(parts[1])
        except ValueError:
            raise TableParseError(f"could not parse numbers in {raw.strip()!r}", line_no)
        if not math.isfinite(xi) or not math.isfinite(eps):
            raise TableParseError("values must be finite", line_no)
        if xi <= 0.0:
            raise TableParseError(f"frequency must be positive, got {xi!r}", line_no)
        if eps < 1.0:
            raise TableParseError(f"permittivity must be >= 1, got {eps!r}", line_no)
        if xi_vals and xi <= xi_vals[-1]:
            raise TableParseError(
                f"frequencies must be strictly increasing, {xi!r} after {xi_vals[-1]!r}",
                line_no,
            )
        if eps_vals and eps > eps_vals[-1]:
            raise TableParseError(
                f"permittivity must be non-increasing, {eps!r} after {eps_vals[-1]!r}",
                line_no,
            )
        xi_vals.append(xi)
        eps_vals.append(eps)
    return xi_vals, eps_vals


def load_permittivity_table(source: Union[str, os.PathLike, IO[str]]) -> Tabulated:
    """Read a two-column CSV of (xi [rad/s], eps(i xi)) samples.

    ``source`` is a path or an open text stream.  '#' starts a comment,
    blank lines are skipped.  Frequencies must be positive and strictly
    increasing, permittivities >= 1 and non-increasing; at least two
    samples are required.  Violations raise :class:`TableParseError`
    with the offending line number.
    """
    if hasattr(source, "read"):
        xi_vals, eps_vals = _parse_lines(source)
    else:
        with open(source, "r", encoding="utf-8") as fh:
            xi_vals, eps_vals = _parse_lines(fh)
    if not xi_vals:
        raise TableParseError("no samples")
    if len(xi_vals) < 2:
        raise TableParseError("need at least two samples to interpolate")
    # Plasma tail through the two lowest samples: each gives a candidate
    # omega_p**2 = (eps - 1) xi**2; take their geometric mean.
    w0_sq = (eps_vals[0] - 1.0) * xi_vals[0] ** 2
    w1_sq = (eps_vals[1] - 1.0) * xi_vals[1] ** 2
    if w0_sq <= 0.0 or w1_sq <= 0.0:
        raise TableParseError("lowest two samples must have eps > 1 to fit the metallic tail")
    omega_p_fit = (w0_sq * w1_sq) ** 0.25
    table = PermittivityTable(
        xi=np.asarray(xi_vals, dtype=float),
        eps=np.asarray(eps_vals, dtype=float),
        omega_p_fit=omega_p_fit,
    )
    return Tabulated(table)
