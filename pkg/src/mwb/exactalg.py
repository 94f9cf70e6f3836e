"""Exact multivariate Laurent polynomial and rational arithmetic.

Coefficients are arbitrary-precision Python integers; rationals only ever
appear as outputs of evaluate(). Terms are kept in a dict keyed by exponent
tuples, with zero coefficients stripped eagerly so structural equality is
canonical equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ArityMismatch, BadInput, NotDivisible


def _term_sort_key(exps: tuple[int, ...]) -> tuple:
    # total degree first, then reverse-lex so e.g. x1^2 prints before x1*x2
    return (sum(exps), tuple(-e for e in exps))


class LaurentPoly:
    """A Laurent polynomial over ZZ in a fixed tuple of named variables."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Iterable[str], terms: Mapping[tuple[int, ...], int] | None = None):
        object.__setattr__(self, "names", tuple(names))
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            for exps, c in terms.items():
                if c:
                    clean[tuple(exps)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # ---- constructors ----

    @classmethod
    def zero(cls, names: Iterable[str]) -> "LaurentPoly":
        return cls(names)

    @classmethod
    def constant(cls, names: Iterable[str], c: int) -> "LaurentPoly":
        names = tuple(names)
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def one(cls, names: Iterable[str]) -> "LaurentPoly":
        return cls.constant(names, 1)

    @classmethod
    def variable(cls, names: Iterable[str], name: str) -> "LaurentPoly":
        names = tuple(names)
        i = names.index(name)
        exps = [0] * len(names)
        exps[i] = 1
        return cls(names, {tuple(exps): 1})

    @classmethod
    def monomial(cls, names: Iterable[str], exps: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        return cls(tuple(names), {tuple(exps): coeff})

    # ---- basic predicates ----

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * len(self.names): 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ---- ring operations ----

    def _check(self, other: "LaurentPoly") -> None:
        if self.names != other.names:
            raise ArityMismatch(f"variable sets differ: {self.names} vs {other.names}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return LaurentPoly(self.names, terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, 0) - c
        return LaurentPoly(self.names, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.names, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        if not self.terms or not other.terms:
            return LaurentPoly.zero(self.names)
        n = len(self.names)
        if n == 0:
            c = sum(self.terms.values()) * sum(other.terms.values())
            return LaurentPoly(self.names, {(): c})
        # pack exponent tuples into integers (mixed radix) so the inner loop
        # works on plain int keys; packing is linear, so packed keys add
        lo1 = self.min_exponents()
        lo2 = other.min_exponents()
        hi1 = tuple(max(col) for col in zip(*self.terms.keys()))
        hi2 = tuple(max(col) for col in zip(*other.terms.keys()))
        widths = [hi1[i] + hi2[i] - lo1[i] - lo2[i] + 1 for i in range(n)]
        strides = [1] * n
        for i in range(1, n):
            strides[i] = strides[i - 1] * widths[i - 1]

        def pack(e, lo):
            acc = 0
            for i in range(n):
                acc += (e[i] - lo[i]) * strides[i]
            return acc

        p1 = [(pack(e, lo1), c) for e, c in self.terms.items()]
        p2 = [(pack(e, lo2), c) for e, c in other.terms.items()]
        if len(p1) > len(p2):
            p1, p2 = p2, p1
        acc: dict[int, int] = {}
        get = acc.get
        for k1, c1 in p1:
            for k2, c2 in p2:
                k = k1 + k2
                acc[k] = get(k, 0) + c1 * c2
        lo = tuple(a + b for a, b in zip(lo1, lo2))
        terms: dict[tuple[int, ...], int] = {}
        for key, c in acc.items():
            if not c:
                continue
            exps = []
            for i in range(n):
                key, d = divmod(key, widths[i])
                exps.append(d + lo[i])
            terms[tuple(exps)] = c
        return LaurentPoly(self.names, terms)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("negative power of a non-monomial")
            (exps, c), = self.terms.items()
            if c not in (1, -1):
                raise NotDivisible("negative power with non-unit coefficient")
            coeff = c if k % 2 else 1
            return LaurentPoly(self.names, {tuple(k * e for e in exps): coeff})
        result = LaurentPoly.one(self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly(self.names, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.names == other.names
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.names, frozenset(self.terms.items())))

    # ---- rendering / serialization ----

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda t: _term_sort_key(t[0]))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.names, exps):
                if e == 0:
                    continue
                factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append((" + " if c > 0 else " - ") + body)
        return "".join(pieces)

    @classmethod
    def from_text(cls, names: Iterable[str], text: str) -> "LaurentPoly":
        """Parse the canonical text rendering back into a polynomial."""
        names = tuple(names)
        idx = {name: i for i, name in enumerate(names)}
        s = text.replace(" ", "")
        if s == "0":
            return cls.zero(names)
        # split into signed chunks; '-' inside exponents follows '^'
        chunks: list[str] = []
        cur = ""
        for j, ch in enumerate(s):
            if ch in "+-" and j > 0 and s[j - 1] != "^" and cur:
                chunks.append(cur)
                cur = ch if ch == "-" else ""
            else:
                cur += ch
        chunks.append(cur)
        terms: dict[tuple[int, ...], int] = {}
        for chunk in chunks:
            sign = 1
            if chunk.startswith("-"):
                sign = -1
                chunk = chunk[1:]
            elif chunk.startswith("+"):
                chunk = chunk[1:]
            coeff = sign
            exps = [0] * len(names)
            for factor in chunk.split("*"):
                if not factor:
                    raise ValueError(f"empty factor in {text!r}")
                if factor[0].isdigit():
                    coeff *= int(factor)
                    continue
                if "^" in factor:
                    name, _, p = factor.partition("^")
                    e = int(p)
                else:
                    name, e = factor, 1
                if name not in idx:
                    raise ValueError(f"unknown variable {name!r}")
                exps[idx[name]] += e
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + coeff
        return cls(names, terms)

    def to_json_terms(self) -> list[dict]:
        return [{"coeff": str(c), "exps": list(e)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json_terms(cls, names: Iterable[str], data: list[dict]) -> "LaurentPoly":
        terms = {tuple(d["exps"]): int(d["coeff"]) for d in data}
        return cls(tuple(names), terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"

    # ---- evaluation ----

    def evaluate(self, assignment: Mapping[str, int | Fraction]) -> Fraction:
        """Exact rational value at the given point.

        Raises ZeroDivisionError if a variable with a negative exponent
        is assigned zero.
        """
        vals = [Fraction(assignment[name]) for name in self.names]
        total = Fraction(0)
        for exps, c in self.terms.items():
            v = Fraction(c)
            for x, e in zip(vals, exps):
                if e:
                    v *= x ** e
            total += v
        return total

    def substitute(self, env: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Symbolic composition: plug a polynomial in for every variable.

        env must assign a value to each variable that occurs with nonzero
        exponent; the values must all share one name set, which becomes the
        name set of the result.  Negative exponents are not supported.
        """
        values = list(env.values())
        if not values:
            raise BadInput("empty substitution environment")
        out_names = values[0].names
        for v in values:
            if v.names != out_names:
                raise ArityMismatch("substitution values must share one variable set")
        acc = LaurentPoly.zero(out_names)
        for exps, c in self.terms.items():
            term = LaurentPoly.constant(out_names, c)
            for name, e in zip(self.names, exps):
                if e == 0:
                    continue
                if e < 0:
                    raise BadInput(f"negative exponent of {name} in substitute")
                if name not in env:
                    raise BadInput(f"no substitution value for {name}")
                term = term * env[name] ** e
            acc = acc + term
        return acc

    # ---- division ----

    def min_exponents(self) -> tuple[int, ...]:
        """Per-variable minimum exponent over all terms (zero poly: all 0)."""
        if not self.terms:
            return (0,) * len(self.names)
        cols = zip(*self.terms.keys())
        return tuple(min(col) for col in cols)

    def shift(self, offset: tuple[int, ...]) -> "LaurentPoly":
        return LaurentPoly(
            self.names,
            {tuple(a + b for a, b in zip(e, offset)): c for e, c in self.terms.items()},
        )


def _grlex_lead(terms: dict[tuple[int, ...], int]) -> tuple[int, ...]:
    return max(terms, key=lambda e: (sum(e), e))


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact Laurent quotient q with q*den == num, or raise NotDivisible.

    Both operands are shifted by monomials so their per-variable minimum
    exponents are zero; the resulting polynomial division then peels leading
    terms in graded-lex order.
    """
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero(num.names)
    shift_n = num.min_exponents()
    shift_d = den.min_exponents()
    n_terms = dict(num.shift(tuple(-s for s in shift_n)).terms)
    d_poly = den.shift(tuple(-s for s in shift_d))
    d_lead = _grlex_lead(d_poly.terms)
    d_lc = d_poly.terms[d_lead]
    q_terms: dict[tuple[int, ...], int] = {}
    while n_terms:
        lead = _grlex_lead(n_terms)
        lc = n_terms[lead]
        t = tuple(a - b for a, b in zip(lead, d_lead))
        if any(e < 0 for e in t) or lc % d_lc:
            raise NotDivisible(f"{num.to_text()} is not divisible by {den.to_text()}")
        c = lc // d_lc
        q_terms[t] = c
        for e, dc in d_poly.terms.items():
            key = tuple(a + b for a, b in zip(t, e))
            v = n_terms.get(key, 0) - c * dc
            if v:
                n_terms[key] = v
            else:
                n_terms.pop(key, None)
    offset = tuple(a - b for a, b in zip(shift_n, shift_d))
    return LaurentPoly(num.names, q_terms).shift(offset)


class RationalFunction:
    """A quotient of Laurent polynomials, reduced when an exact division exists."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one(num.names)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        try:
            q = exact_div(num, den)
            # canonical split: polynomial numerator over a monomial denominator
            dexps = tuple(max(0, -m) for m in q.min_exponents())
            num = q.shift(dexps)
            den = LaurentPoly.monomial(num.names, dexps)
        except NotDivisible:
            # cancel the common monomial factor so renders stay small
            shift = tuple(
                min(a, b) for a, b in zip(num.min_exponents(), den.min_exponents())
            )
            if any(shift):
                neg = tuple(-s for s in shift)
                num = num.shift(neg)
                den = den.shift(neg)
        # normalize the sign on the denominator's leading coefficient
        if den.terms and den.terms[_grlex_lead(den.terms)] < 0:
            num = -num
            den = -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def names(self) -> tuple[str, ...]:
        return self.num.names

    @classmethod
    def variable(cls, names: Iterable[str], name: str) -> "RationalFunction":
        return cls(LaurentPoly.variable(names, name))

    @classmethod
    def constant(cls, names: Iterable[str], c: int) -> "RationalFunction":
        return cls(LaurentPoly.constant(names, c))

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return RationalFunction(self.den, self.num) ** (-k)
        r = RationalFunction.constant(self.names, 1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        # hash through the reduced form when polynomial; otherwise a weak hash
        if self.den.is_one():
            return hash(self.num)
        return hash(self.names)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def to_text(self) -> str:
        if self.den.is_one():
            return self.num.to_text()
        n = self.num.to_text()
        d = self.den.to_text()
        if len(self.num.terms) > 1:
            n = f"({n})"
        if len(self.den.terms) > 1 or not self.den.is_monomial():
            d = f"({d})"
        elif "*" in d or "^" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_text()!r})"

    def evaluate(self, assignment: Mapping[str, int | Fraction]) -> Fraction:
        d = self.den.evaluate(assignment)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the given point")
        return self.num.evaluate(assignment) / d

    def as_laurent(self) -> LaurentPoly:
        """Exact Laurent expansion; NotDivisible if there is none."""
        return exact_div(self.num, self.den)
