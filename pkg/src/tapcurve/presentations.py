"""Group presentations, free-group words, Fox calculus, and two-bridge
presentation generation.

Words are tuples of (generator index, sign) letters and are kept exactly as
written; free reduction happens on demand. Only one presentation 2-complex is
ever built downstream, so basepoint and path choices never enter at this
layer. The relator convention is relator = 1; a relation u = v is encoded as
the relator u v^-1.
"""

from dataclasses import dataclass
from math import gcd

from .matrix import smith_normal_form


class Word:
    """Freely reducible word in abstract generators."""

    __slots__ = ("letters",)

    def __init__(self, letters):
        self.letters = tuple(letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def inverse(self):
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def reduced(self):
        stack = []
        for g, s in self.letters:
            if stack and stack[-1] == (g, -s):
                stack.pop()
            else:
                stack.append((g, s))
        return Word(tuple(stack))

    def exponent_sum(self, gen):
        return sum(s for g, s in self.letters if g == gen)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return "Word(%s)" % (self.letters,)


class GroupRingElement:
    """Finite integer combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {w: c for w, c in terms.items() if c}

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def from_word(cls, w, coeff=1):
        return cls({w.reduced(): coeff})

    def coeff(self, w):
        return self.terms.get(w.reduced(), 0)

    def items(self):
        return self.terms.items()

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = (w1 * w2).reduced()
                out[w] = out.get(w, 0) + c1 * c2
        return GroupRingElement(out)

    def left_mul_word(self, w):
        out = {}
        for key, c in self.terms.items():
            k = (w * key).reduced()
            out[k] = out.get(k, 0) + c
        return GroupRingElement(out)

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return "GroupRingElement(%s)" % (self.terms,)


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple

    def generator_index(self, name):
        return self.generators.index(name)


@dataclass(frozen=True)
class AbelianizationData:
    free_rank: int
    torsion: tuple
    psi_map: tuple


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__("%s (line %d, column %d)" % (message, line, col))
        self.line = line
        self.col = col


def _positions(text):
    line, col = 1, 1
    out = []
    for ch in text:
        out.append((line, col))
        if ch == "\n":
            line += 1
            col = 1
        else:
            col += 1
    out.append((line, col))
    return out


def parse_presentation(text):
    """Parse '<' genlist '|' relatorlist '>' into a Presentation.

    Generators are single lowercase letters; an uppercase letter or ^-1 is
    the inverse; ^<int> repeats the preceding letter; relators are comma
    separated and may be empty.
    """
    pos = _positions(text)

    def err(message, i):
        line, col = pos[min(i, len(pos) - 1)]
        raise ParseError(message, line, col)

    open_i = text.find("<")
    if open_i < 0:
        err("missing opening bracket", 0)
    close_i = text.rfind(">")
    if close_i < 0 or close_i < open_i:
        err("unbalanced brackets", len(text) - 1)
    if text[:open_i].strip() or text[close_i + 1:].strip():
        err("text outside brackets", 0 if text[:open_i].strip() else close_i + 1)
    body = text[open_i + 1:close_i]
    bar = body.find("|")
    if bar < 0:
        err("missing '|' separator", open_i)
    gen_part = body[:bar]
    rel_part = body[bar + 1:]
    rel_base = open_i + 1 + bar + 1

    generators = []
    for k, raw in enumerate(gen_part.split(",")):
        name = raw.strip()
        at = open_i + 1 + gen_part.find(raw)
        if not name:
            if k == 0 and len(gen_part.split(",")) == 1:
                break
            err("empty generator name", at)
        if not (len(name) == 1 and name.isalpha() and name.islower()):
            err("bad generator name '%s'" % name, at)
        if name in generators:
            err("duplicate generator '%s'" % name, at)
        generators.append(name)
    if not generators:
        err("empty generator list", open_i + 1)
    index = {g: i for i, g in enumerate(generators)}

    relators = []
    chunks = rel_part.split(",")
    offset = 0
    for chunk in chunks:
        base = rel_base + offset
        offset += len(chunk) + 1
        letters = []
        i = 0
        while i < len(chunk):
            ch = chunk[i]
            here = base + i
            if ch.isspace():
                i += 1
                continue
            if ch == "^":
                if not letters:
                    err("power with no preceding letter", here)
                j = i + 1
                if j < len(chunk) and chunk[j] == "-":
                    j += 1
                start_digits = j
                while j < len(chunk) and chunk[j].isdigit():
                    j += 1
                if j == start_digits:
                    err("malformed exponent", here)
                k = int(chunk[i + 1:j])
                g, s = letters.pop()
                if k < 0:
                    s, k = -s, -k
                letters.extend([(g, s)] * k)
                i = j
                continue
            if ch.isalpha():
                low = ch.lower()
                if low not in index:
                    err("unknown generator %s" % low, here)
                letters.append((index[low], 1 if ch.islower() else -1))
                i += 1
                continue
            err("unexpected character '%s'" % ch, here)
        if letters or chunk.strip():
            relators.append(Word(tuple(letters)))

    return Presentation(tuple(generators), tuple(relators))


def print_presentation(p):
    names = p.generators
    rels = ", ".join(
        " ".join(names[g] if s > 0 else names[g].upper() for g, s in w)
        for w in p.relators)
    return "<%s | %s>" % (",".join(names), rels)


def fox_derivative(w, gen):
    """Free differential d w / d gen, a GroupRingElement.

    d(uv)/dg = du/dg + u dv/dg, d g/d g = 1, d g^-1/d g = -g^-1.
    """
    out = {}
    prefix = []
    for g, s in w:
        if g == gen:
            if s > 0:
                key = Word(tuple(prefix)).reduced()
                out[key] = out.get(key, 0) + 1
            else:
                key = Word(tuple(prefix) + ((g, -1),)).reduced()
                out[key] = out.get(key, 0) - 1
        prefix.append((g, s))
    return GroupRingElement(out)


def two_bridge_presentation(p, q):
    """Two-bridge knot group <a, b | a w b^-1 w^-1>, w alternating in b, a
    with signs (-1)^floor(i q / p)."""
    if p <= 0 or p % 2 == 0:
        raise ValueError("two-bridge parameter p must be odd and positive")
    if not (0 < q < p):
        raise ValueError("two-bridge parameter q must satisfy 0 < q < p")
    if gcd(p, q) != 1:
        raise ValueError("two-bridge parameters must be coprime")
    letters = []
    for i in range(1, p):
        g = 1 if i % 2 == 1 else 0   # b, a, b, a, ...
        s = -1 if (i * q // p) % 2 else 1
        letters.append((g, s))
    w = Word(tuple(letters))
    relator = Word(((0, 1),)) * w * Word(((1, -1),)) * w.inverse()
    return Presentation(("a", "b"), (relator,))


def longitude_word(p, q):
    """Preferred longitude of b(p, q) as a word in the generators.

    With w the alternating word of the group presentation and e its total
    exponent sum, the element w * reverse(w) * a^(-2e) commutes with the
    meridian a and has exponent sum zero, which pins it down as the
    longitude up to orientation.
    """
    pres = two_bridge_presentation(p, q)
    w = pres.relators[0].letters[1:p]
    e = sum(s for _, s in w)
    tail = ((0, -1 if e > 0 else 1),) * abs(2 * e)
    return Word(w + tuple(reversed(w)) + tail)


def abelianization_class(p, psi=None):
    """Smith data of the abelianized relator matrix plus the class psi.

    psi defaults to the canonical projection onto the infinite cyclic
    quotient when the free rank is one; larger free rank needs an explicit
    psi vector. A supplied psi must be nontrivial and kill every relator.
    """
    g = len(p.generators)
    cols = max(len(p.relators), 1)
    a = [[p.relators[j].exponent_sum(i) if j < len(p.relators) else 0
          for j in range(cols)] for i in range(g)]
    s, u, _v, rank = smith_normal_form(a)
    diag = [s[i][i] for i in range(min(g, cols))]
    torsion = tuple(int(d) for d in diag if d not in (0, 1))
    free_rank = g - rank
    if psi is not None:
        psi = tuple(int(x) for x in psi)
        if len(psi) != g:
            raise ValueError("psi must assign an exponent to every generator")
        if not any(psi):
            raise ValueError("psi must be nontrivial")
        for r in p.relators:
            if sum(r.exponent_sum(i) * psi[i] for i in range(g)):
                raise ValueError("psi does not kill every relator")
        return AbelianizationData(free_rank, torsion, psi)
    if free_rank == 0:
        raise ValueError("no nontrivial class psi exists (H1 is finite)")
    if free_rank > 1:
        return AbelianizationData(free_rank, torsion, None)
    row = [int(u[rank][j]) for j in range(g)]
    lead = next(x for x in row if x)
    if lead < 0:
        row = [-x for x in row]
    return AbelianizationData(free_rank, torsion, tuple(row))
