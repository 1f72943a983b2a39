"""Permutations of a fixed finite degree.

Points are 0-based internally and 1-based in cycle notation. Products act
left to right: ``compose(p, q)`` applies ``p`` first, then ``q``, so a word
``x1 x2 ... xt`` means "apply x1 first".
"""

from math import lcm

from .errors import ParseError


class Permutation:
    """An immutable bijection on ``{0, ..., degree - 1}``."""

    __slots__ = ("_images", "_hash")

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        n = len(images)
        if n < 1:
            raise ValueError("permutation degree must be at least 1")
        if sorted(images) != list(range(n)):
            raise ValueError(f"{images} is not a permutation of 0..{n - 1}")
        self._images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles, degree):
        """Build from an iterable of 1-based cycles, e.g. ``[(1, 2), (3, 4, 5)]``."""
        return parse_cycles("".join("(" + " ".join(map(str, c)) + ")" for c in cycles) or "()", degree)

    @property
    def degree(self):
        return len(self._images)

    @property
    def images(self):
        return self._images

    def __call__(self, point):
        return self._images[point]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._images == other._images

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._images < other._images

    def __mul__(self, other):
        return compose(self, other)

    def __pow__(self, exponent):
        return power(self, exponent)

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self):
        return format_cycles(self)

    def is_identity(self):
        return all(i == x for i, x in enumerate(self._images))

    def inverse(self):
        inv = [0] * self.degree
        for i, x in enumerate(self._images):
            inv[x] = i
        return Permutation(inv)

    def cycles(self):
        """Disjoint cycles (0-based) of length >= 2, ordered by smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            x = self._images[start]
            while x != start:
                cycle.append(x)
                seen[x] = True
                x = self._images[x]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self):
        return order(self)


def compose(p, q):
    """Apply ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation(qi[x] for x in p.images)


def power(p, exponent):
    if exponent < 0:
        return power(p.inverse(), -exponent)
    result = list(range(p.degree))
    for cycle in p.cycles():
        m = len(cycle)
        for pos, point in enumerate(cycle):
            result[point] = cycle[(pos + exponent) % m]
    return Permutation(result)


def order(p):
    """Smallest t >= 1 with p^t the identity (lcm of cycle lengths)."""
    return lcm(1, *(len(c) for c in p.cycles()))


def parse_cycles(text, degree):
    """Parse 1-based disjoint cycle notation such as ``"(1 2)(3 4)"``.

    Points may be separated by whitespace or commas. ``"()"`` is the identity.
    Raises :class:`ParseError` carrying the offending character position.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    images = list(range(degree))
    used = set()
    pos = 0
    n = len(text)
    saw_cycle = False

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    pos = skip_ws(pos)
    if pos == n:
        raise ParseError("empty cycle notation (use '()' for the identity)", text, pos)
    while pos < n:
        if text[pos] != "(":
            raise ParseError(f"expected '(' but found {text[pos]!r}", text, pos)
        pos += 1
        cycle = []
        while True:
            pos = skip_ws(pos)
            if pos >= n:
                raise ParseError("unclosed '('", text, pos)
            ch = text[pos]
            if ch == ")":
                pos += 1
                break
            if ch == ",":
                if not cycle:
                    raise ParseError("unexpected ','", text, pos)
                pos += 1
                continue
            if not ch.isdigit():
                raise ParseError(f"unexpected character {ch!r}", text, pos)
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            point = int(text[start:pos])
            if not 1 <= point <= degree:
                raise ParseError(f"point {point} out of range 1..{degree}", text, start)
            if point in used:
                raise ParseError(f"repeated point {point}", text, start)
            used.add(point)
            cycle.append(point - 1)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
        saw_cycle = True
        pos = skip_ws(pos)
    assert saw_cycle
    return Permutation(images)


def format_cycles(p):
    """Canonical 1-based cycle notation; fixed points omitted, identity is ``"()"``."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)
