"""Planar diagram algebra and exact Kauffman-bracket evaluation of braid words.

Diagram encoding
----------------
A diagram on n strands is a planar perfect matching of 2n boundary points,
stored as a tuple M with M[p] the partner of p.  Points 0..n-1 run along the
bottom from left to right and points n..2n-1 along the top from *right to
left*, so the whole boundary is numbered counterclockwise and a matching is
planar exactly when its bracket sequence is balanced.  The top point above
bottom column c is 2n-1-c.

Composition stacks one diagram on top of another, removing and counting any
closed loops formed in the middle.  Each loop is worth d = -A^2 - A^-2,
which is substituted as a Laurent polynomial in exact mode so coefficients
stay integral.

Braid words are flat sequences of nonzero letters, letter +i (-i) being a
positive (negative) crossing of strands i and i+1, first-applied letter
first, drawn at the bottom of the diagram.  A positive letter expands to
A*identity + A^-1*e_i, a negative one to A^-1*identity + A*e_i.

Closures: the plat closure caps neighboring columns (1,2)(3,4)... top and
bottom; the Markov (trace) closure joins each top point to the bottom point
of the same column.  Both are normalized so a single unknot has value 1.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import DomainError
from .laurent import LOOP_VALUE, LaurentPoly
from .models import AnyonModel

Matching = tuple[int, ...]


def is_planar_matching(match: Matching) -> bool:
    """True when ``match`` is a fixed-point-free involution with balanced nesting."""
    m = len(match)
    if any(not 0 <= match[p] < m or match[p] == p or match[match[p]] != p for p in range(m)):
        return False
    stack: list[int] = []
    for p in range(m):
        if p < match[p]:
            stack.append(match[p])
        elif not stack or stack.pop() != p:
            return False
    return True


def identity_diagram(n: int) -> Matching:
    return tuple(2 * n - 1 - p for p in range(2 * n))


def cup_cap_diagram(n: int, i: int) -> Matching:
    """The generator e_i: columns i and i+1 joined at bottom and at top (1-indexed)."""
    if not 1 <= i <= n - 1:
        raise DomainError(f"generator index {i} outside [1, {n - 1}]")
    match = list(identity_diagram(n))
    b1, b2 = i - 1, i
    t1, t2 = 2 * n - 1 - b1, 2 * n - 1 - b2
    match[b1], match[b2] = b2, b1
    match[t1], match[t2] = t2, t1
    return tuple(match)


@functools.lru_cache(maxsize=200_000)
def compose(upper: Matching, lower: Matching) -> tuple[Matching, int]:
    """Stack ``upper`` on top of ``lower``; return (matching, closed loops).

    The top boundary of ``lower`` is glued to the bottom boundary of
    ``upper`` column by column.
    """
    if len(upper) != len(lower):
        raise DomainError("cannot compose diagrams with different strand counts")
    m = len(lower)
    n = m // 2
    result = [-1] * m
    # Middle column c is lower's top point m-1-c glued to upper's bottom point c.
    seen = [False] * n

    def walk(side: int, p: int) -> tuple[int, int]:
        # side 0 = lower, 1 = upper; returns the exit (side, boundary point)
        while True:
            if side == 0:
                q = lower[p]
                if q < n:
                    return 0, q
                c = m - 1 - q
                seen[c] = True
                side, p = 1, c
            else:
                q = upper[p]
                if q >= n:
                    return 1, q
                seen[q] = True
                side, p = 0, m - 1 - q

    for start in range(m):
        if result[start] != -1:
            continue
        _, exit_pt = walk(0 if start < n else 1, start)
        result[start] = exit_pt
        result[exit_pt] = start

    loops = 0
    for c in range(n):
        if seen[c]:
            continue
        loops += 1
        cur = c
        while not seen[cur]:
            seen[cur] = True
            up = upper[cur]  # middle column reached inside upper
            seen[up] = True
            cur = m - 1 - lower[m - 1 - up]
    return tuple(result), loops


def plat_loops(match: Matching) -> int:
    """Loop count of the plat closure (neighboring columns capped top and bottom)."""
    m = len(match)
    n = m // 2
    if n % 2:
        raise DomainError("plat closure needs an even strand count")
    closure = [0] * m
    for j in range(0, n, 2):
        closure[j], closure[j + 1] = j + 1, j
        t1, t2 = m - 1 - j, m - 2 - j
        closure[t1], closure[t2] = t2, t1
    return _cycle_count(match, tuple(closure))


def markov_loops(match: Matching) -> int:
    """Loop count of the trace closure (each column joined top to bottom)."""
    m = len(match)
    return _cycle_count(match, identity_diagram(m // 2))


def _cycle_count(match: Matching, closure: Matching) -> int:
    seen = [False] * len(match)
    loops = 0
    for start in range(len(match)):
        if seen[start]:
            continue
        loops += 1
        p = start
        while not seen[p]:
            seen[p] = True
            q = match[p]
            seen[q] = True
            p = closure[q]
    return loops


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group on n strands.

    ``letters`` holds signed generator indices in application order: letter
    +i crosses strands i and i+1 positively, -i negatively.
    """

    n: int
    letters: tuple[int, ...]

    def __post_init__(self):
        for letter in self.letters:
            if letter == 0 or not 1 <= abs(letter) <= self.n - 1:
                raise DomainError(f"letter {letter} outside braid group on {self.n} strands")

    def __mul__(self, other: BraidWord) -> BraidWord:
        """Concatenation: ``self`` is applied first, then ``other``."""
        if self.n != other.n:
            raise DomainError("cannot multiply words on different strand counts")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple(-l for l in reversed(self.letters)))

    def free_reduce(self) -> BraidWord:
        """Cancel adjacent mutually inverse letters until none remain."""
        stack: list[int] = []
        for letter in self.letters:
            if stack and stack[-1] == -letter:
                stack.pop()
            else:
                stack.append(letter)
        return BraidWord(self.n, tuple(stack))

    def cyclic_rotations(self):
        w = self.letters
        return (BraidWord(self.n, w[r:] + w[:r]) for r in range(max(len(w), 1)))

    def writhe(self) -> int:
        return sum(1 if l > 0 else -1 for l in self.letters)

    def __len__(self) -> int:
        return len(self.letters)


class TLElement:
    """A finite linear combination of planar diagrams on a common strand count.

    Coefficients are LaurentPoly in exact mode or complex in numeric mode.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[Matching, object]):
        self.n = n
        self.terms = {m: c for m, c in terms.items() if not _is_zero(c)}

    def support(self):
        return self.terms.keys()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TLElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"TLElement(n={self.n}, {len(self.terms)} diagrams)"


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, LaurentPoly) else c == 0


def tl_compose(x: Matching, y: Matching) -> tuple[Matching, int]:
    """Compose two diagrams (x stacked on y); alias for :func:`compose`."""
    return compose(x, y)


def _letter_terms(letter: int, n: int, at: complex | None):
    i = abs(letter)
    if at is None:
        ca = LaurentPoly.monomial(1 if letter > 0 else -1)
        cb = LaurentPoly.monomial(-1 if letter > 0 else 1)
    else:
        ca = at if letter > 0 else 1 / at
        cb = 1 / at if letter > 0 else at
    return (identity_diagram(n), ca), (cup_cap_diagram(n, i), cb)


def _loop_weight(at: complex | None):
    if at is None:
        return LOOP_VALUE
    return -(at**2) - at**-2


def _expand(word: BraidWord, at: complex | None) -> dict[Matching, object]:
    """Accumulate the skein expansion of ``word`` left-to-right."""
    n = word.n
    delta = _loop_weight(at)
    one = LaurentPoly.one() if at is None else 1.0 + 0j
    acc: dict[Matching, object] = {identity_diagram(n): one}
    cap = _catalan(n)
    for letter in word.letters:
        new: dict[Matching, object] = {}
        for diag_l, coeff_l in _letter_terms(letter, n, at):
            for diag_a, coeff_a in acc.items():
                stacked, loops = compose(diag_l, diag_a)
                coeff = coeff_l * coeff_a * delta**loops if loops else coeff_l * coeff_a
                if stacked in new:
                    new[stacked] = new[stacked] + coeff
                else:
                    new[stacked] = coeff
        acc = {m: c for m, c in new.items() if not _is_zero(c)}
        assert len(acc) <= cap, "diagram support exceeded the Catalan bound"
    return acc


@functools.lru_cache(maxsize=None)
def _catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def skein_expand(word: BraidWord) -> TLElement:
    """Exact skein expansion of a braid word into the diagram algebra."""
    return TLElement(word.n, _expand(word, None))


def _closed_sum(terms: dict[Matching, object], loop_fn, at: complex | None):
    # Every closed diagram has at least one loop; folding one factor of d
    # into the normalization makes a single unknot evaluate to 1.
    delta = _loop_weight(at)
    total = LaurentPoly.zero() if at is None else 0j
    for match, coeff in terms.items():
        total = total + coeff * delta ** (loop_fn(match) - 1)
    return total

def plat_bracket(word: BraidWord, at: complex | None = None):
    """Bracket of the plat closure; LaurentPoly if ``at`` is None, else complex."""
    if word.n % 2:
        raise DomainError("plat closure needs an even strand count")
    return _closed_sum(_expand(word, at), plat_loops, at)


def markov_bracket(word: BraidWord, at: complex | None = None):
    """Bracket of the trace closure; LaurentPoly if ``at`` is None, else complex."""
    return _closed_sum(_expand(word, at), markov_loops, at)


def state_sum_bracket(word: BraidWord, closure: str, at: complex | None = None):
    """Brute-force bracket: smooth every crossing independently (2^c states).

    Independent of the algebra accumulation in ``_expand``; used as an
    oracle for it.
    """
    if closure not in ("plat", "markov"):
        raise DomainError(f"unknown closure {closure!r}")
    loop_fn = plat_loops if closure == "plat" else markov_loops
    if closure == "plat" and word.n % 2:
        raise DomainError("plat closure needs an even strand count")
    n = word.n
    delta = _loop_weight(at)
    total = LaurentPoly.zero() if at is None else 0j
    c = len(word.letters)
    for state in range(1 << c):
        diag = identity_diagram(n)
        loops = 0
        exponent = 0
        for pos, letter in enumerate(word.letters):
            pick_cup = (state >> pos) & 1
            exponent += (1 if letter > 0 else -1) * (-1 if pick_cup else 1)
            piece = cup_cap_diagram(n, abs(letter)) if pick_cup else identity_diagram(n)
            diag, extra = compose(piece, diag)
            loops += extra
        coeff = (
            LaurentPoly.monomial(exponent) if at is None else at**exponent
        )
        total = total + coeff * delta ** (loops + loop_fn(diag) - 1)
    return total


def anyon_trace(model: AnyonModel, n: int, word: BraidWord, word_p: BraidWord) -> complex:
    """Overlap of two braided vacuum-pair states via the plat closure.

    Equals 1 whenever ``word_p`` followed by the inverse of ``word`` reduces
    to the identity (no statistical effect).
    """
    if n % 2:
        raise DomainError("vacuum-pair states need an even strand count")
    if word.n != n or word_p.n != n:
        raise DomainError("words must live on the stated strand count")
    combined = (word * word_p.inverse()).free_reduce()
    value = plat_bracket(combined, at=model.A)
    return value / model.d ** (n // 2 - 1)
