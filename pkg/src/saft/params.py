"""SAFT parameter vectors ``(a, b, c, d, p, q)``.

The matrix part must be unimodular (``ad - bc = 1``) up to a tolerance and
``b`` must be nonzero, since the integral kernel divides by ``b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import (ComplexParameterUnsupported, DeterminantViolation,
                     NonFiniteParameter, UnknownPreset, ValidationError, ZeroB)

DEFAULT_TOL = 1e-9
# The printed d = 0.3143 gives ad - bc = 1.0001.
EXPERIMENT_TOL = 1e-3
EXPERIMENT_VECTOR = (7.0, 2.0, 0.6, 0.3143, 2.5, 1.0)


class DerivedConstants(NamedTuple):
    omega_cap: float
    delta: float
    chirp_rate: float


@dataclass(frozen=True)
class SaftParams:
    """Immutable, validated SAFT parameter vector.

    Construction runs :func:`validate`, so every instance satisfies
    ``|ad - bc - 1| <= tol`` and ``b != 0``.
    """

    a: float
    b: float
    c: float
    d: float
    p: float = 0.0
    q: float = 0.0
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "p", "q", "tol"):
            value = getattr(self, name)
            if isinstance(value, complex):
                raise ComplexParameterUnsupported(
                    f"parameter {name}={value!r} is complex; only real "
                    "parameter vectors are supported")
            object.__setattr__(self, name, float(value))
        validate(self)

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def omega_cap(self) -> float:
        """Frequency offset ``2(bq - dp)``."""
        return 2.0 * (self.b * self.q - self.d * self.p)

    @property
    def delta(self) -> float:
        """Period ``2 pi b`` of the discrete-time transform's modulus."""
        return 2.0 * math.pi * self.b

    @property
    def chirp_rate(self) -> float:
        return self.a / (2.0 * self.b)

    @property
    def derived(self) -> DerivedConstants:
        return DerivedConstants(self.omega_cap, self.delta, self.chirp_rate)

    def as_tuple(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c, self.d, self.p, self.q)

    def inverse(self) -> "SaftParams":
        """Parameters of the inverse transform.

        Matrix ``(d, -b, -c, a)`` with offsets ``(bq - dp, cp - aq)``.
        """
        a, b, c, d, p, q = self.as_tuple()
        return SaftParams(d, -b, -c, a, b * q - d * p, c * p - a * q,
                          tol=self.tol)

    def with_tol(self, tol: float) -> "SaftParams":
        return SaftParams(*self.as_tuple(), tol=tol)

    def __str__(self):
        return ",".join(repr(v) for v in self.as_tuple())


def validate(params: SaftParams, tol: float | None = None) -> None:
    """Raise if ``params`` is not a usable SAFT parameter vector.

    Parameters
    ----------
    params : SaftParams
    tol : float, optional
        Determinant tolerance. Defaults to ``params.tol``.

    Raises
    ------
    NonFiniteParameter, ZeroB, DeterminantViolation
    """
    tol = params.tol if tol is None else float(tol)
    values = params.as_tuple()
    if not all(math.isfinite(v) for v in values) or not math.isfinite(tol):
        raise NonFiniteParameter(f"non-finite entry in {values}")
    if params.b == 0.0:
        raise ZeroB("b = 0: the SAFT kernel is undefined (degenerate operator)")
    residual = abs(params.a * params.d - params.b * params.c - 1.0)
    if residual > tol:
        raise DeterminantViolation(residual, tol)


# name -> (arity description, builder returning the raw 6-vector)
_PRESETS = {
    "ft": ((), lambda: (0.0, 1.0, -1.0, 0.0, 0.0, 0.0)),
    "offset-ft": (("p", "q"), lambda p, q: (0.0, 1.0, -1.0, 0.0, p, q)),
    "frft": (("theta",), lambda th: (math.cos(th), math.sin(th),
                                     -math.sin(th), math.cos(th), 0.0, 0.0)),
    "offset-frft": (("theta", "p", "q"),
                    lambda th, p, q: (math.cos(th), math.sin(th),
                                      -math.sin(th), math.cos(th), p, q)),
    "lct": (("a", "b", "c", "d"), lambda a, b, c, d: (a, b, c, d, 0.0, 0.0)),
    "fresnel": (("b",), lambda b: (1.0, b, 0.0, 1.0, 0.0, 0.0)),
    "time-shift": (("tau",), lambda tau: (1.0, 0.0, 0.0, 1.0, tau, 0.0)),
    "frequency-shift": (("xi",), lambda xi: (1.0, 0.0, 0.0, 1.0, 0.0, xi)),
    "time-scale": (("alpha",),
                   lambda al: (1.0 / al, 0.0, 0.0, al, 0.0, 0.0)),
    "experiment": ((), lambda: EXPERIMENT_VECTOR),
}

# Rows of the classical table whose matrices have complex entries.
_COMPLEX_PRESETS = {"laplace", "fractional-laplace", "bilateral-laplace",
                    "gauss-weierstrass", "bargmann"}


def preset_names() -> list[str]:
    return list(_PRESETS)


def preset_arguments(name: str) -> tuple[str, ...]:
    return _lookup(name)[0]


def _lookup(name):
    key = name.lower()
    if key in _COMPLEX_PRESETS:
        raise ComplexParameterUnsupported(
            f"preset {name!r} has complex matrix entries; only real "
            "parameter vectors are supported")
    try:
        return _PRESETS[key]
    except KeyError:
        raise UnknownPreset(
            f"unknown preset {name!r}; choose from {', '.join(_PRESETS)}"
        ) from None


def preset_vector(name: str, args: Sequence[float] = ()) -> tuple[float, ...]:
    """Raw parameter vector of a named preset, without validation."""
    argnames, build = _lookup(name)
    if len(args) != len(argnames):
        raise ValidationError(
            f"preset {name!r} takes {len(argnames)} argument(s) "
            f"({', '.join(argnames) or 'none'}), got {len(args)}")
    return tuple(float(v) for v in build(*args))


def preset(name: str, args: Sequence[float] = ()) -> SaftParams:
    """Build a validated :class:`SaftParams` from a named preset.

    ``time-shift``, ``frequency-shift`` and ``time-scale`` have ``b = 0``
    and therefore raise :class:`ZeroB`; use :func:`preset_vector` to obtain
    their raw vectors.
    """
    vec = preset_vector(name, args)
    tol = EXPERIMENT_TOL if name.lower() == "experiment" else DEFAULT_TOL
    return SaftParams(*vec, tol=tol)


def parse_saft(text: str, tol: float = DEFAULT_TOL) -> SaftParams:
    """Parse ``"a,b,c,d,p,q"`` (the offsets may be omitted)."""
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise ValidationError(f"cannot parse SAFT vector {text!r}") from None
    if len(values) not in (4, 6):
        raise ValidationError(
            f"expected 4 or 6 comma-separated numbers, got {len(values)}")
    return SaftParams(*values, tol=tol)


def parse_preset(spec: str) -> SaftParams:
    """Parse ``NAME`` or ``NAME:arg1,arg2`` as used on the command line."""
    name, _, rest = spec.partition(":")
    args = [float(v) for v in rest.split(",")] if rest else []
    return preset(name, args)
