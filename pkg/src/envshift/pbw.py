"""Exact noncommutative polynomial arithmetic in PBW normal form.

Elements of the enveloping algebra are stored as sparse maps

    word (tuple of canonical generator ids, non-decreasing) -> coefficient

with exact rational (or parameter-polynomial) coefficients.  The total
generator order is lexicographic on (position of i, position of j) over the
ordered index set, and every public operation returns fully normalized
polynomials: an out-of-order adjacent pair X Y is rewritten as Y X + [X, Y]
until all words are sorted.  Each swap either keeps the degree and removes an
inversion or strictly drops the degree, so rewriting terminates; confluence
is checked by test against independent rewrite strategies.

Polynomials are immutable values and all operations are pure.  The per-algebra
rewrite caches are the only shared state: entries are deterministic functions
of their keys and writes are idempotent, so concurrent readers at worst
recompute a value.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraError, AlgebraSpec, bracket_structure
from .params import ParamPolynomial, coeff_is_zero, coeff_to_str


class _Tables:
    """Per-algebra rewriting state: id-level bracket table and product cache."""

    __slots__ = ("spec", "gens", "ids", "_bracket", "_mul")

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.gens = spec.canonical_generators
        self.ids = spec.generator_ids
        self._bracket: dict = {}
        self._mul: dict = {}

    def bracket(self, a: int, b: int):
        key = (a, b)
        out = self._bracket.get(key)
        if out is None:
            raw = bracket_structure(self.spec, self.gens[a], self.gens[b])
            out = tuple((self.ids[pair], c) for pair, c in sorted(raw.items()))
            self._bracket[key] = out
        return out

    def mul_word_gen(self, word: tuple, g: int) -> dict:
        """Normal form of (sorted word) * X_g as {sorted word: int}."""
        if not word or word[-1] <= g:
            return {word + (g,): 1}
        key = (word, g)
        cached = self._mul.get(key)
        if cached is not None:
            return cached
        head, last = word[:-1], word[-1]
        out: dict = {}
        # word*g = (head*g)*last + head*[last, g]
        for w2, c2 in self.mul_word_gen(head, g).items():
            for w3, c3 in self.mul_word_gen(w2, last).items():
                v = out.get(w3, 0) + c2 * c3
                if v:
                    out[w3] = v
                elif w3 in out:
                    del out[w3]
        for b, cb in self.bracket(last, g):
            for w2, c2 in self.mul_word_gen(head, b).items():
                v = out.get(w2, 0) + cb * c2
                if v:
                    out[w2] = v
                elif w2 in out:
                    del out[w2]
        self._mul[key] = out
        return out


_TABLES: dict = {}


def _tables(spec: AlgebraSpec) -> _Tables:
    tab = _TABLES.get(spec)
    if tab is None:
        tab = _TABLES[spec] = _Tables(spec)
    return tab


def _coerce_coeff(c):
    if isinstance(c, (ParamPolynomial, Fraction)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class NCPolynomial:
    """An element of U(g) in canonical PBW form.  Value-immutable by contract."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms=None, normalized=False):
        self.spec = spec
        if not terms:
            self.terms = {}
            return
        if normalized:
            self.terms = {w: c for w, c in terms.items() if not coeff_is_zero(c)}
            return
        tab = _tables(spec)
        acc: dict = {}
        for word, c in terms.items():
            c = _coerce_coeff(c)
            if coeff_is_zero(c):
                continue
            if _is_sorted(word):
                _acc_add(acc, word, c)
            else:
                folded = {(): 1}
                for g in word:
                    nxt: dict = {}
                    for w2, c2 in folded.items():
                        for w3, c3 in tab.mul_word_gen(w2, g).items():
                            v = nxt.get(w3, 0) + c2 * c3
                            if v:
                                nxt[w3] = v
                            elif w3 in nxt:
                                del nxt[w3]
                    folded = nxt
                for w2, c2 in folded.items():
                    _acc_add(acc, w2, c * c2)
        self.terms = acc

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, spec):
        return cls(spec)

    @classmethod
    def scalar(cls, spec, c):
        c = _coerce_coeff(c)
        if coeff_is_zero(c):
            return cls(spec)
        return cls(spec, {(): c}, normalized=True)

    @classmethod
    def one(cls, spec):
        return cls.scalar(spec, 1)

    @classmethod
    def generator(cls, spec, i, j):
        """X[i,j], canonicalized; the so-type zero generator yields 0."""
        sign, pair = spec.canonicalize_pair(i, j)
        if pair is None:
            return cls(spec)
        g = spec.generator_ids[pair]
        return cls(spec, {(g,): Fraction(sign)}, normalized=True)

    @classmethod
    def from_word(cls, spec, pairs, coeff=1):
        """Product of raw-index generators X[i1,j1]...X[ik,jk] times coeff."""
        c = _coerce_coeff(coeff)
        word = []
        for i, j in pairs:
            sign, pair = spec.canonicalize_pair(i, j)
            if pair is None:
                return cls(spec)
            c = c * sign
            word.append(spec.generator_ids[pair])
        return cls(spec, {tuple(word): c})

    # -- basic queries --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Maximal word length; -1 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=-1)

    def top_terms(self) -> dict:
        d = self.degree()
        return {w: c for w, c in self.terms.items() if len(w) == d}

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def word_pairs(self, word):
        return tuple(self.spec.canonical_generators[g] for g in word)

    # -- arithmetic -----------------------------------------------------------

    def _check_same(self, other):
        if self.spec != other.spec:
            raise AlgebraError("mixed-algebra input")

    def __add__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        self._check_same(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _acc_add(acc, w, c)
        return NCPolynomial(self.spec, acc, normalized=True)

    def __neg__(self):
        return NCPolynomial(self.spec, {w: -c for w, c in self.terms.items()}, normalized=True)

    def __sub__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            return multiply(self, other)
        c = _coerce_coeff(other)
        if coeff_is_zero(c):
            return NCPolynomial(self.spec)
        return NCPolynomial(
            self.spec, {w: v * c for w, v in self.terms.items()}, normalized=True
        )

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, frozenset((w, str(c)) for w, c in self.terms.items())))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<NCPolynomial {self.spec.designator}: {format_poly(self)}>"


def _is_sorted(word) -> bool:
    return all(word[k] <= word[k + 1] for k in range(len(word) - 1))


def _acc_add(acc: dict, word, c):
    v = acc.get(word)
    v = c if v is None else v + c
    if coeff_is_zero(v):
        acc.pop(word, None)
    else:
        acc[word] = v


def normal_form(p: NCPolynomial) -> NCPolynomial:
    """Identity on NCPolynomial values: the class invariant keeps them canonical."""
    return p


def multiply(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    """Product in U(g): concatenate words, then rewrite to PBW normal form."""
    p._check_same(q)
    spec = p.spec
    tab = _tables(spec)
    acc: dict = {}
    for w2, c2 in q.terms.items():
        # fold the letters of w2 onto every word of p, sharing the word cache
        for w1, c1 in p.terms.items():
            cur = {w1: 1}
            for g in w2:
                nxt: dict = {}
                for wa, ca in cur.items():
                    for wb, cb in tab.mul_word_gen(wa, g).items():
                        v = nxt.get(wb, 0) + ca * cb
                        if v:
                            nxt[wb] = v
                        elif wb in nxt:
                            del nxt[wb]
                cur = nxt
            cc = c1 * c2
            for wb, cb in cur.items():
                _acc_add(acc, wb, cc * cb)
    return NCPolynomial(spec, acc, normalized=True)


def commutator(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    """[p, q] = pq - qp, normalized."""
    return multiply(p, q) - multiply(q, p)


# ---------------------------------------------------------------------------
# independent bubble-sort rewriters (confluence oracles; used by the tests)


def bubble_normal_form(spec: AlgebraSpec, terms: dict, strategy: str = "leftmost") -> dict:
    """Rewrite raw terms by repeatedly swapping one out-of-order adjacent pair.

    strategy picks the leftmost or rightmost descent first.  Deliberately
    simple and cache-free so it can serve as an oracle for the production path.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    tab = _tables(spec)
    out: dict = {}
    work = [(w, _coerce_coeff(c)) for w, c in terms.items()]
    while work:
        word, c = work.pop()
        if coeff_is_zero(c):
            continue
        descents = [k for k in range(len(word) - 1) if word[k] > word[k + 1]]
        if not descents:
            _acc_add(out, word, c)
            continue
        k = descents[0] if strategy == "leftmost" else descents[-1]
        a, b = word[k], word[k + 1]
        work.append((word[:k] + (b, a) + word[k + 2 :], c))
        for g, cb in tab.bracket(a, b):
            work.append((word[:k] + (g,) + word[k + 2 :], c * cb))
    return out


# ---------------------------------------------------------------------------
# text format
#
# polynomial := term (" + " term)*
# term       := [coeff "*"] word | coeff
# word       := gen ("." gen)*
# gen        := "X[" int "," int "]"
# coeff      := rational "p/q" / integer, or a parenthesized parameter
#               polynomial such as "(3/2*a1^2 + -1*a2)"


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def format_poly(p: NCPolynomial) -> str:
    if not p.terms:
        return "0"
    gens = p.spec.canonical_generators
    parts = []
    for word in sorted(p.terms, key=lambda w: (-len(w), w)):
        c = p.terms[word]
        text = ".".join("X[%d,%d]" % gens[g] for g in word)
        if not word:
            parts.append(coeff_to_str(c))
        elif c == 1:
            parts.append(text)
        else:
            parts.append(f"{coeff_to_str(c)}*{text}")
    return " + ".join(parts)


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def expect(self, ch):
        self._skip()
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def take_int(self):
        self._skip()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            raise ParseError("expected integer", start)
        return int(self.text[start:self.pos])

    def take_name(self):
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected name", start)
        return self.text[start:self.pos]

    def done(self):
        self._skip()
        return self.pos >= len(self.text)


def parse(spec: AlgebraSpec, text: str) -> NCPolynomial:
    """Parse the text format back into a normalized polynomial."""
    lex = _Lexer(text)
    if lex.done():
        raise ParseError("empty input", 0)
    terms: dict = {}
    while True:
        coeff, word = _parse_term(spec, lex)
        _acc_add(terms, tuple(word), coeff)
        if lex.done():
            break
        lex.expect("+")
    return NCPolynomial(spec, terms)


def _parse_rational(lex: _Lexer):
    num = lex.take_int()
    if lex.peek() == "/":
        lex.expect("/")
        den = lex.take_int()
        if den == 0:
            raise ParseError("zero denominator", lex.pos)
        return Fraction(num, den)
    return Fraction(num)


def _parse_param_poly(lex: _Lexer):
    total = ParamPolynomial()
    while True:
        part = ParamPolynomial.const(1)
        while True:
            ch = lex.peek()
            if ch is not None and (ch.isdigit() or ch == "-"):
                part = part * _parse_rational(lex)
            elif ch is not None and ch.isalpha():
                name = lex.take_name()
                exp = 1
                if lex.peek() == "^":
                    lex.expect("^")
                    exp = lex.take_int()
                    if exp < 1:
                        raise ParseError("exponent must be positive", lex.pos)
                mono = ParamPolynomial({((name, 1),): 1})
                for _ in range(exp):
                    part = part * mono
            else:
                raise ParseError("expected parameter factor", lex.pos)
            if lex.peek() == "*":
                lex.expect("*")
            else:
                break
        total = total + part
        if lex.peek() == "+":
            lex.expect("+")
        else:
            break
    return total


def _parse_gen(spec: AlgebraSpec, lex: _Lexer):
    pos = lex.pos
    name = lex.take_name()
    if name != "X":
        raise ParseError("expected generator 'X[i,j]'", pos)
    lex.expect("[")
    i = lex.take_int()
    lex.expect(",")
    j = lex.take_int()
    lex.expect("]")
    try:
        sign, pair = spec.canonicalize_pair(i, j)
    except AlgebraError as exc:
        raise ParseError(str(exc), pos) from None
    return sign, pair


def _parse_word(spec: AlgebraSpec, lex: _Lexer):
    sign = Fraction(1)
    word = []
    while True:
        s, pair = _parse_gen(spec, lex)
        if pair is None:
            sign = Fraction(0)
        else:
            sign *= s
            word.append(spec.generator_ids[pair])
        if lex.peek() == ".":
            lex.expect(".")
        else:
            break
    return sign, word


def _parse_term(spec: AlgebraSpec, lex: _Lexer):
    ch = lex.peek()
    if ch is None:
        raise ParseError("unexpected end of input", lex.pos)
    if ch.isdigit() or ch == "-":
        coeff = _parse_rational(lex)
        if lex.peek() == "*":
            lex.expect("*")
            sign, word = _parse_word(spec, lex)
            return coeff * sign, word
        return coeff, []
    if ch == "(":
        lex.expect("(")
        coeff = _parse_param_poly(lex)
        lex.expect(")")
        if lex.peek() == "*":
            lex.expect("*")
            sign, word = _parse_word(spec, lex)
            return coeff * sign, word
        return coeff, []
    sign, word = _parse_word(spec, lex)
    return sign, word
