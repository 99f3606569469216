"""Free-group word algebra over finite presentations, plus Fox derivatives.

Words are run-length encoded as tuples of (generator symbol, nonzero
exponent) with adjacent runs over distinct symbols; the empty tuple is the
identity.  Serialization uses one letter per generator occurrence with
uppercase marking inverses: "a1B2C" means a1 * b2^-1 * c^-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class Word:
    """Freely reduced word in run-length encoding."""

    __slots__ = ("runs",)

    def __init__(self, runs=()):
        self.runs = _normalize(tuple(runs))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    @classmethod
    def gen(cls, symbol: str, exponent: int = 1) -> "Word":
        if exponent == 0:
            return cls(())
        return cls(((symbol, exponent),))

    @classmethod
    def from_letters(cls, letters) -> "Word":
        return cls(tuple((s, e) for s, e in letters))

    def letters(self):
        """Yield (symbol, +-1) one occurrence at a time."""
        for s, e in self.runs:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield (s, step)

    def __len__(self):
        return sum(abs(e) for _, e in self.runs)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.runs + other.runs)

    def inverse(self) -> "Word":
        return Word(tuple((s, -e) for s, e in reversed(self.runs)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word(())
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def cyclically_reduced(self) -> bool:
        if len(self.runs) < 2:
            return True
        return self.runs[0][0] != self.runs[-1][0] or (
            self.runs[0][1] > 0) == (self.runs[-1][1] > 0)

    def symbols(self) -> set:
        return {s for s, _ in self.runs}

    def __eq__(self, other):
        return isinstance(other, Word) and self.runs == other.runs

    def __hash__(self):
        return hash(self.runs)

    def __bool__(self):
        return bool(self.runs)

    def __repr__(self):
        return f"Word({word_to_string(self)!r})"


def _normalize(runs):
    out = []
    for s, e in runs:
        if e == 0:
            continue
        if out and out[-1][0] == s:
            merged = out[-1][1] + e
            out.pop()
            if merged:
                out.append((s, merged))
        else:
            out.append((s, e))
    # merging may create new adjacent equal symbols; repeat until stable
    changed = True
    while changed:
        changed = False
        nxt = []
        for s, e in out:
            if nxt and nxt[-1][0] == s:
                merged = nxt[-1][1] + e
                nxt.pop()
                if merged:
                    nxt.append((s, merged))
                changed = True
            else:
                nxt.append((s, e))
        out = nxt
    return tuple(out)


def free_reduce(w: Word) -> Word:
    """Words are stored reduced; provided for symmetry and round-trips."""
    return Word(w.runs)


def multiply(w1: Word, w2: Word) -> Word:
    return w1 * w2


def invert(w: Word) -> Word:
    return w.inverse()


def cyclic_reduce(w: Word) -> Word:
    runs = list(w.runs)
    while len(runs) >= 2 and runs[0][0] == runs[-1][0] and (
        (runs[0][1] > 0) != (runs[-1][1] > 0)
    ):
        s = runs[0][0]
        head, tail = runs[0][1], runs[-1][1]
        cancel = min(abs(head), abs(tail))
        head_step = 1 if head > 0 else -1
        runs = runs[1:-1]
        if abs(head) > cancel:
            runs.insert(0, (s, head_step * (abs(head) - cancel)))
        if abs(tail) > cancel:
            runs.append((s, -head_step * (abs(tail) - cancel)))
        runs = list(_normalize(tuple(runs)))
    return Word(tuple(runs))


_LETTER_RE = re.compile(r"([a-zA-Z])(\d*)")


def word_to_string(w: Word) -> str:
    parts = []
    for s, step in w.letters():
        parts.append(s.upper() if step < 0 else s)
    return "".join(parts) or "1"


def word_from_string(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return Word(())
    letters = []
    pos = 0
    while pos < len(text):
        m = _LETTER_RE.match(text, pos)
        if not m or (text[pos].isspace()):
            if text[pos].isspace():
                pos += 1
                continue
            raise ValueError(f"cannot parse word at {text[pos:]!r}")
        ch, idx = m.group(1), m.group(2)
        sym = ch.lower() + idx
        letters.append((sym, -1 if ch.isupper() else 1))
        pos = m.end()
    return Word.from_letters(letters)


@dataclass(frozen=True)
class Presentation:
    """Finite presentation <generators | relators>."""

    generators: tuple
    relators: tuple
    name: str = ""

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            if not r.symbols() <= gens:
                raise ValueError(f"relator {r!r} uses undeclared generators")
            if cyclic_reduce(r) != r:
                raise ValueError(f"relator {r!r} is not cyclically reduced")

    def __str__(self):
        gens = ", ".join(self.generators)
        rels = ", ".join(word_to_string(r) for r in self.relators)
        return f"⟨{gens} | {rels}⟩"


def _commutator(x: Word, y: Word) -> Word:
    return x * y * x.inverse() * y.inverse()


def surface_generators(genus: int):
    syms = []
    for i in range(1, genus + 1):
        syms.append(f"a{i}")
        syms.append(f"b{i}")
    return tuple(syms)


def surface_relator(genus: int) -> Word:
    w = Word.identity()
    for i in range(1, genus + 1):
        w = w * _commutator(Word.gen(f"a{i}"), Word.gen(f"b{i}"))
    return w


def surface_presentation(genus: int) -> Presentation:
    """Genus-G surface group: 2G generators, one product-of-commutators relator."""
    if genus < 2:
        raise ValueError("genus must be >= 2")
    return Presentation(surface_generators(genus), (surface_relator(genus),),
                        name=f"surface:{genus}")


def unit_tangent_presentation(genus: int) -> Presentation:
    """Fundamental group of the unit tangent bundle of a genus-G surface.

    Generators a_i, b_i and the central fiber class c; relators say c is
    central and the product of commutators equals c^(2G-2).
    """
    if genus < 2:
        raise ValueError("genus must be >= 2")
    gens = surface_generators(genus) + ("c",)
    c = Word.gen("c")
    relators = []
    for i in range(1, genus + 1):
        relators.append(_commutator(Word.gen(f"a{i}"), c))
        relators.append(_commutator(Word.gen(f"b{i}"), c))
    relators.append(surface_relator(genus) * Word.gen("c", -(2 * genus - 2)))
    return Presentation(gens, tuple(relators), name=f"unit-tangent:{genus}")


def project_to_sigma(w: Word) -> Word:
    """Quotient map killing the fiber generator c."""
    return Word(tuple((s, e) for s, e in w.runs if s != "c"))


class GroupRingElement:
    """Finite formal sum of words with scalar coefficients.

    Coefficients may be ints, Fractions or complex numbers; zero
    coefficients are never stored, so equality is structural.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, coeff in dict(terms).items():
                if coeff != 0:
                    self.terms[w] = coeff

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def of_word(cls, w: Word, coeff=1):
        return cls({w: coeff})

    @classmethod
    def one(cls):
        return cls({Word.identity(): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for w, cf in other.terms.items():
            s = out.get(w, 0) + cf
            if s == 0:
                out.pop(w, None)
            else:
                out[w] = s
        return GroupRingElement(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GroupRingElement({w: -cf for w, cf in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            out = {}
            for u, cu in self.terms.items():
                for v, cv in other.terms.items():
                    w = u * v
                    s = out.get(w, 0) + cu * cv
                    if s == 0:
                        out.pop(w, None)
                    else:
                        out[w] = s
            return GroupRingElement(out)
        return GroupRingElement({w: cf * other for w, cf in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "GroupRingElement(0)"
        body = " + ".join(f"{cf}*{word_to_string(w)}" for w, cf in sorted(
            self.terms.items(), key=lambda kv: word_to_string(kv[0])))
        return f"GroupRingElement({body})"


def _power_derivative(symbol: str, exponent: int) -> GroupRingElement:
    # d(g^n)/dg = 1 + g + ... + g^(n-1);  d(g^-n)/dg = -(g^-1 + ... + g^-n)
    terms = {}
    if exponent > 0:
        for t in range(exponent):
            terms[Word.gen(symbol, t) if t else Word.identity()] = 1
    else:
        for t in range(1, -exponent + 1):
            terms[Word.gen(symbol, -t)] = -1
    return GroupRingElement(terms)


def fox_derivative(w: Word, symbol: str) -> GroupRingElement:
    """Left Fox derivative d(w)/d(symbol) in the integral group ring.

    Satisfies d(uv) = d(u) + u*d(v), d(g)/dg = 1, d(g^-1)/dg = -g^-1, and
    the fundamental identity sum_g d(r)/dg * (g - 1) = r - 1.
    """
    out = GroupRingElement.zero()
    prefix = Word.identity()
    for s, e in w.runs:
        if s == symbol:
            out = out + GroupRingElement.of_word(prefix) * _power_derivative(s, e)
        prefix = prefix * Word.gen(s, e)
    return out


def fox_identity_defect(p: Presentation, relator: Word) -> GroupRingElement:
    """sum_g d(r)/dg * (g - 1) - (r - 1); zero iff the Fox identity holds."""
    acc = GroupRingElement.zero()
    for g in p.generators:
        dg = fox_derivative(relator, g)
        acc = acc + dg * (GroupRingElement.of_word(Word.gen(g)) - GroupRingElement.one())
    return acc - (GroupRingElement.of_word(relator) - GroupRingElement.one())
