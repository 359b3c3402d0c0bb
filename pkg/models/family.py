"""
Curve family specifications.

Each family is a small frozen dataclass holding the parameters of one of the
closed-form curve families; FamilySpec adds the sampling range and count.
"""
import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any, ClassVar, Dict, Tuple, Union

from .errors import InvalidSpec

MIN_FAMILY_SAMPLES = 9


class Sign(Enum):
    """Sign of an equiaffine curvature law."""
    PLUS = "plus"
    MINUS = "minus"
    ZERO = "zero"

    @property
    def factor(self) -> int:
        return {Sign.PLUS: 1, Sign.MINUS: -1, Sign.ZERO: 0}[self]


def _finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise InvalidSpec(f"{name} must be finite", {name: value})


@dataclass(frozen=True)
class LogSpiral:
    """gamma(w) = exp((a + ib) w)."""
    a: float
    b: float
    name: ClassVar[str] = "logspiral"

    def __post_init__(self):
        _finite(a=self.a, b=self.b)
        if self.a == 0 and self.b == 0:
            raise InvalidSpec("Logarithmic spiral needs (a, b) != (0, 0)")


@dataclass(frozen=True)
class LAC:
    """Log-aesthetic curve: kappa(s) = (xi s + eta)^(-1/alpha), or exp(xi s + eta) for alpha = 0."""
    alpha: float
    xi: float
    eta: float
    name: ClassVar[str] = "lac"

    def __post_init__(self):
        _finite(alpha=self.alpha, xi=self.xi, eta=self.eta)


@dataclass(frozen=True)
class Quadratic:
    """Conic with constant equiaffine curvature; aspect stretches the ellipse/hyperbola."""
    kappa_sa: float
    aspect: float = 1.0
    name: ClassVar[str] = "quadratic"

    def __post_init__(self):
        _finite(kappa_sa=self.kappa_sa, aspect=self.aspect)
        if self.aspect <= 0:
            raise InvalidSpec("aspect must be positive", {"aspect": self.aspect})


@dataclass(frozen=True)
class EsaClass:
    """Curve with kappa^SA(u) = +-(xi u + eta)^-2."""
    sign: Sign
    xi: float
    eta: float = 0.0
    name: ClassVar[str] = "esa"

    def __post_init__(self):
        if isinstance(self.sign, str):
            object.__setattr__(self, "sign", Sign(self.sign))
        _finite(xi=self.xi, eta=self.eta)
        if self.sign == Sign.ZERO:
            raise InvalidSpec("EsaClass sign must be plus or minus")
        if self.xi == 0:
            raise InvalidSpec("EsaClass needs xi != 0")


@dataclass(frozen=True)
class PowerGraph:
    """Graph (t, t^alpha)."""
    alpha: float
    name: ClassVar[str] = "power"

    def __post_init__(self):
        _finite(alpha=self.alpha)


@dataclass(frozen=True)
class LogGraph:
    """Graph (t, log t)."""
    name: ClassVar[str] = "log"


@dataclass(frozen=True)
class XLogXGraph:
    """Graph (t, t log t)."""
    name: ClassVar[str] = "xlogx"


Family = Union[LogSpiral, LAC, Quadratic, EsaClass, PowerGraph, LogGraph, XLogXGraph]

FAMILY_TYPES = {
    cls.name: cls
    for cls in (LogSpiral, LAC, Quadratic, EsaClass, PowerGraph, LogGraph, XLogXGraph)
}


def family_to_dict(family: Family) -> Dict[str, Any]:
    """Flat dict with a 'family' tag; enum values are stored by value."""
    data = {"family": family.name}
    for key, value in asdict(family).items():
        data[key] = value.value if isinstance(value, Enum) else value
    return data


def family_from_dict(data: Dict[str, Any]) -> Family:
    """Inverse of family_to_dict."""
    data = dict(data)
    tag = data.pop("family", None)
    if tag not in FAMILY_TYPES:
        raise InvalidSpec(f"Unknown curve family: {tag}", {"known": sorted(FAMILY_TYPES)})
    try:
        return FAMILY_TYPES[tag](**data)
    except TypeError as e:
        raise InvalidSpec(f"Bad parameters for family {tag}: {e}") from e


@dataclass(frozen=True)
class FamilySpec:
    """
    A family plus its sampling.

    Attributes:
        family: One of the family dataclasses
        range: (lo, hi) in the family's natural parameter
        n: Number of samples
    """
    family: Family
    range: Tuple[float, float]
    n: int = 1000

    def __post_init__(self):
        lo, hi = (float(v) for v in self.range)
        object.__setattr__(self, "range", (lo, hi))
        _finite(lo=lo, hi=hi)
        if not lo < hi:
            raise InvalidSpec("range needs lo < hi", {"lo": lo, "hi": hi})
        if int(self.n) < MIN_FAMILY_SAMPLES:
            raise InvalidSpec(
                f"n must be at least {MIN_FAMILY_SAMPLES}", {"n": self.n}
            )
        object.__setattr__(self, "n", int(self.n))

    @property
    def lo(self) -> float:
        return self.range[0]

    @property
    def hi(self) -> float:
        return self.range[1]

    def to_dict(self) -> Dict[str, Any]:
        data = family_to_dict(self.family)
        data.update({"range": [self.lo, self.hi], "n": self.n})
        return data
