"""Exact scalars, exponent vectors, sparse polynomial supports and norms."""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

INF = math.inf

Rational = Fraction
Exponent = tuple  # tuple[int, ...]
RationalLike = Union[int, Fraction, str]

DEFAULT_VARIABLES = ("x", "y", "z", "w")


class ArityError(ValueError):
    pass


class ParseError(ValueError):
    pass


def to_fraction(x: RationalLike) -> Fraction:
    """Coerce ``int``, ``Fraction`` or a ``"p/q"`` string to a Fraction.

    Floats are refused on purpose: every scalar in this package is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
            raise ParseError(f"not a rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_vector(text: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.replace(" ", "").split(",")]
    if not text.strip() or any(p == "" for p in parts):
        raise ParseError(f"malformed rational vector: {text!r}")
    return tuple(to_fraction(p) for p in parts)


def fmt(x) -> str:
    """Serialize a rational as ``p/q`` (or ``p``); infinity as ``inf``."""
    if x == INF:
        return "inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Norm(enum.Enum):
    L1 = "l1"
    LINF = "linf"

    @property
    def dual(self) -> "Norm":
        return Norm.LINF if self is Norm.L1 else Norm.L1

    @classmethod
    def parse(cls, name: str) -> "Norm":
        try:
            return cls(name.lower())
        except ValueError:
            raise ParseError(f"unknown norm {name!r}; expected l1 or linf") from None


def norm_eval(n: Norm, v: Sequence[RationalLike]) -> Fraction:
    if len(v) == 0:
        raise ArityError("norm of an empty vector")
    vals = [abs(to_fraction(x)) for x in v]
    if n is Norm.L1:
        return sum(vals, Fraction(0))
    return max(vals)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def dominates(a: Sequence, b: Sequence) -> bool:
    """Componentwise ``a >= b``."""
    return all(x >= y for x, y in zip(a, b))


@dataclass(frozen=True)
class SupportSet:
    """A polynomial given by its nonzero terms ``exponent -> coefficient``.

    The empty mapping is the zero polynomial.
    """

    arity: int
    terms: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.arity < 1:
            raise ArityError("arity must be positive")
        clean: dict[tuple, Fraction] = {}
        for exp, c in self.terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.arity:
                raise ArityError(f"exponent {exp} has arity {len(exp)}, expected {self.arity}")
            if any(e < 0 for e in exp):
                raise ParseError(f"negative exponent in {exp}")
            c = to_fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in sorted(clean.items()) if c})

    def __hash__(self):
        return hash((self.arity, tuple(self.terms.items())))

    # construction helpers
    @classmethod
    def zero(cls, arity: int) -> "SupportSet":
        return cls(arity, {})

    @classmethod
    def one(cls, arity: int) -> "SupportSet":
        return cls(arity, {(0,) * arity: Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: RationalLike = 1) -> "SupportSet":
        return cls(len(exp), {tuple(exp): to_fraction(coeff)})

    @classmethod
    def from_exponents(cls, exps: Iterable[Sequence[int]]) -> "SupportSet":
        exps = [tuple(e) for e in exps]
        if not exps:
            raise ArityError("cannot infer arity from an empty exponent list")
        return cls(len(exps[0]), {e: Fraction(1) for e in exps})

    @property
    def support(self) -> frozenset:
        return frozenset(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def _check(self, other: "SupportSet"):
        if self.arity != other.arity:
            raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "SupportSet") -> "SupportSet":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return SupportSet(self.arity, out)

    def __neg__(self) -> "SupportSet":
        return SupportSet(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SupportSet") -> "SupportSet":
        return self + (-other)

    def __mul__(self, other: "SupportSet") -> "SupportSet":
        self._check(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return SupportSet(self.arity, out)

    def __pow__(self, k: int) -> "SupportSet":
        if k < 0:
            raise ValueError("negative power")
        result, base = SupportSet.one(self.arity), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: RationalLike) -> "SupportSet":
        c = to_fraction(c)
        return SupportSet(self.arity, {e: c * v for e, v in self.terms.items()})

    def total_degree(self) -> int:
        if self.is_zero():
            raise ValueError("degree of the zero polynomial")
        return max(sum(e) for e in self.terms)

    def permute(self, order: Sequence[int]) -> "SupportSet":
        """Reorder coordinates: new coordinate ``k`` is old coordinate ``order[k]``."""
        return SupportSet(self.arity, {tuple(e[i] for i in order): c for e, c in self.terms.items()})

    # serialization
    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [{"exp": list(e), "coeff": fmt(c)} for e, c in self.terms.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SupportSet":
        try:
            arity = int(data["arity"])
            terms: dict[tuple, Fraction] = {}
            for t in data["terms"]:
                e = tuple(int(a) for a in t["exp"])
                terms[e] = terms.get(e, Fraction(0)) + to_fraction(str(t.get("coeff", "1")))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed polynomial JSON: {exc}") from None
        return cls(arity, terms)

    def serialize(self, variables: Sequence[str] = DEFAULT_VARIABLES) -> str:
        if self.arity > len(variables):
            variables = [f"x{i + 1}" for i in range(self.arity)]
        if self.is_zero():
            return "0"
        pieces = []
        for e, c in self.terms.items():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = fmt(a)
            elif a == 1:
                body = mono
            else:
                body = f"{fmt(a)}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.serialize()


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^([A-Za-z]\w*)(?:\^(\d+))?$")
_COEFF = re.compile(r"^\d+(/\d+)?$")


def parse_support(
    text: Union[str, Mapping],
    arity: int | None = None,
    variables: Sequence[str] | None = None,
) -> SupportSet:
    """Parse ``"x^2 + x*y^3"`` (or the JSON form) into a canonical SupportSet.

    Variables default to ``x, y, z, w``; ``x1, x2, ...`` are accepted as well.
    Without an explicit ``arity`` it is the largest variable index used, and
    at least 2.
    """
    if not isinstance(text, str):
        f = SupportSet.from_json(text)
        if arity is not None and f.arity != arity:
            raise ArityError(f"expected arity {arity}, got {f.arity}")
        return f
    names = list(variables) if variables is not None else list(DEFAULT_VARIABLES)
    src = text.strip()
    if not src:
        raise ParseError("empty polynomial")
    if src[0] not in "+-":
        src = "+" + src
    tokens = _TERM_SPLIT.split(src)
    # tokens: ['', sign, term, sign, term, ...]
    if tokens[0] != "" or len(tokens) % 2 != 1:
        raise ParseError(f"malformed polynomial: {text!r}")
    raw: list[tuple[Fraction, dict[int, int]]] = []
    max_index = -1
    for sign, term in zip(tokens[1::2], tokens[2::2]):
        if not term:
            raise ParseError(f"dangling sign in {text!r}")
        coeff = Fraction(-1 if sign == "-" else 1)
        powers: dict[int, int] = {}
        for factor in term.split("*"):
            factor = factor.strip()
            if not factor:
                raise ParseError(f"malformed term {term!r}")
            if _COEFF.match(factor):
                coeff *= Fraction(factor)
                continue
            if re.match(r"^[A-Za-z]\w*\^-", factor):
                raise ParseError(f"negative exponent in {factor!r}")
            m = _FACTOR.match(factor)
            if not m:
                raise ParseError(f"malformed factor {factor!r}")
            name, k = m.group(1), int(m.group(2) or 1)
            if name in names:
                idx = names.index(name)
            elif variables is None and re.fullmatch(r"x\d+", name) and int(name[1:]) >= 1:
                idx = int(name[1:]) - 1
            else:
                raise ParseError(f"unknown variable {name!r}")
            powers[idx] = powers.get(idx, 0) + k
            max_index = max(max_index, idx)
        raw.append((coeff, powers))
    m = arity if arity is not None else max(2, max_index + 1)
    if max_index >= m:
        raise ArityError(f"variable index {max_index + 1} exceeds arity {m}")
    terms: dict[tuple, Fraction] = {}
    for coeff, powers in raw:
        e = tuple(powers.get(i, 0) for i in range(m))
        terms[e] = terms.get(e, Fraction(0)) + coeff
    return SupportSet(m, terms)


def min_total_degree(f: SupportSet):
    """Order of vanishing at the origin; ``INF`` for the zero polynomial."""
    if f.is_zero():
        return INF
    return min(sum(e) for e in f.terms)
