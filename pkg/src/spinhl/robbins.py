"""Monotone triangles, down-arrowed monotone triangles, and Robbins polynomials.

A monotone triangle is a Gelfand-Tsetlin pattern with strictly increasing
rows; those with bottom row 1..n are in bijection with n x n alternating sign
matrices.  The modified Robbins polynomial R*_k(x; u, v, w) is the generating
function of down-arrowed monotone triangles with bottom row k, and admits an
antisymmetrizer formula when k is strictly increasing.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import PoleError
from .symfun import antisymmetrize


@dataclass(frozen=True)
class MonotoneTriangle:
    """Triangular array, rows[0] the single top entry through rows[n-1] the
    bottom row; rows strictly increase and consecutive rows interlace weakly."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        for r, row in enumerate(rows):
            if len(row) != r + 1:
                raise ValueError("row %d must have %d entries" % (r, r + 1))
            if any(row[j] >= row[j + 1] for j in range(len(row) - 1)):
                raise ValueError("rows must strictly increase")
        for r in range(len(rows) - 1):
            for j, v in enumerate(rows[r]):
                if not (rows[r + 1][j] <= v <= rows[r + 1][j + 1]):
                    raise ValueError("diagonal monotonicity fails at row %d" % r)

    @property
    def n(self):
        return len(self.rows)

    @property
    def bottom(self):
        return self.rows[-1]

    def leaning(self, r, j):
        """'L' if entry (r, j) equals its lower-left neighbour, 'R' for the
        lower-right one, 'S' when special (neither)."""
        v = self.rows[r][j]
        if v == self.rows[r + 1][j]:
            return "L"
        if v == self.rows[r + 1][j + 1]:
            return "R"
        return "S"

    def row_stats(self, r):
        """Counts (l, r, s) of left-leaning, right-leaning, special entries in row r."""
        kinds = [self.leaning(r, j) for j in range(r + 1)]
        return kinds.count("L"), kinds.count("R"), kinds.count("S")


def mt_weight(M, x, u, v, w):
    """Polynomial weight of a monotone triangle: row i contributes
    u^{r_{i-1}} v^{l_{i-1}} (w + u x_i + v/x_i)^{s_{i-1}} x_i^{d_i} with
    d_i the row-sum increment corrected by the leaning counts."""
    x = tuple(Fraction(val) for val in x)
    u, v, w = Fraction(u), Fraction(v), Fraction(w)
    n = M.n
    if len(x) != n:
        raise ValueError("need one variable per row")
    out = Fraction(1)
    prev_sum = 0
    for i in range(1, n + 1):
        if i == 1:
            lcnt = rcnt = scnt = 0
        else:
            lcnt, rcnt, scnt = M.row_stats(i - 2)
        d = sum(M.rows[i - 1]) - prev_sum + rcnt - lcnt
        prev_sum = sum(M.rows[i - 1])
        if x[i - 1] == 0 and (d < 0 or scnt):
            raise PoleError("x_%d (negative exponent)" % i)
        out *= u**rcnt * v**lcnt
        if scnt:
            out *= (w + u * x[i - 1] + v / x[i - 1]) ** scnt
        out *= x[i - 1] ** d
    return out


@dataclass(frozen=True)
class DAMT:
    """Down-arrowed monotone triangle: every non-bottom entry carries one of
    SW, DOWN, SE, with left-leaning entries forced to SW and right-leaning
    ones to SE."""

    triangle: MonotoneTriangle
    decorations: tuple  # sorted ((r, j), arrow) pairs

    def __post_init__(self):
        deco = dict(self.decorations)
        n = self.triangle.n
        for r in range(n - 1):
            for j in range(r + 1):
                arrow = deco.get((r, j))
                if arrow not in ("SW", "DOWN", "SE"):
                    raise ValueError("entry (%d, %d) needs a decoration" % (r, j))
                kind = self.triangle.leaning(r, j)
                if kind == "L" and arrow != "SW":
                    raise ValueError("left-leaning entry (%d, %d) must carry SW" % (r, j))
                if kind == "R" and arrow != "SE":
                    raise ValueError("right-leaning entry (%d, %d) must carry SE" % (r, j))
        if len(deco) != n * (n - 1) // 2:
            raise ValueError("decorations must cover exactly the non-bottom entries")
        object.__setattr__(self, "decorations", tuple(sorted(deco.items())))

    def arrow(self, r, j):
        return dict(self.decorations)[(r, j)]


def damt_weight(D, x, u, v, w):
    """Weight u^{#SE} v^{#SW} w^{#DOWN} times the x-monomial whose exponents
    are the row-sum increments corrected by the arrow counts of the row above."""
    x = tuple(Fraction(val) for val in x)
    u, v, w = Fraction(u), Fraction(v), Fraction(w)
    M = D.triangle
    n = M.n
    if len(x) != n:
        raise ValueError("need one variable per row")
    deco = dict(D.decorations)
    out = Fraction(1)
    prev_sum = 0
    for i in range(1, n + 1):
        if i == 1:
            se = sw = 0
        else:
            arrows = [deco[(i - 2, j)] for j in range(i - 1)]
            se = arrows.count("SE")
            sw = arrows.count("SW")
        d = sum(M.rows[i - 1]) - prev_sum + se - sw
        prev_sum = sum(M.rows[i - 1])
        if x[i - 1] == 0 and d < 0:
            raise PoleError("x_%d (negative exponent)" % i)
        out *= x[i - 1] ** d
    for (_, _), arrow in D.decorations:
        out *= {"SE": u, "SW": v, "DOWN": w}[arrow]
    return out


def rows_between(row, strict=True):
    """All strictly (or weakly) increasing rows b with row[j] <= b[j] <= row[j+1]."""
    m = len(row)
    if m == 1:
        return []
    out = []

    def rec(j, acc):
        if j == m - 1:
            out.append(tuple(acc))
            return
        lo = row[j]
        if acc:
            lo = max(lo, acc[-1] + (1 if strict else 0))
        for val in range(lo, row[j + 1] + 1):
            acc.append(val)
            rec(j + 1, acc)
            acc.pop()

    rec(0, [])
    return out


def monotone_triangles(bottom):
    """All monotone triangles with the given strictly increasing bottom row."""
    bottom = tuple(int(v) for v in bottom)
    if any(bottom[j] >= bottom[j + 1] for j in range(len(bottom) - 1)):
        raise ValueError("bottom row must strictly increase")

    def build(row):
        if len(row) == 1:
            return [[row]]
        out = []
        for above in rows_between(row, strict=True):
            for stack in build(above):
                out.append(stack + [row])
        return out

    return [MonotoneTriangle(tuple(stack)) for stack in build(bottom)]


@lru_cache(maxsize=None)
def count_monotone_triangles(bottom):
    """Number of monotone triangles over the bottom row, by plain recursion.

    Independent of the weighted enumeration; bottom row 1..n counts the n x n
    alternating sign matrices."""
    bottom = tuple(bottom)
    if len(bottom) == 1:
        return 1
    return sum(count_monotone_triangles(above) for above in rows_between(bottom, strict=True))


def damts(bottom):
    """All down-arrowed monotone triangles over the bottom row."""
    out = []
    for M in monotone_triangles(bottom):
        out.extend(damts_of(M))
    return out


def damts_of(M):
    """All decoration choices of one monotone triangle."""
    slots = [(r, j) for r in range(M.n - 1) for j in range(r + 1)]
    choices = []
    for r, j in slots:
        kind = M.leaning(r, j)
        if kind == "L":
            choices.append(("SW",))
        elif kind == "R":
            choices.append(("SE",))
        else:
            choices.append(("SW", "DOWN", "SE"))
    out = []

    def rec(idx, acc):
        if idx == len(slots):
            out.append(DAMT(M, tuple(zip(slots, acc))))
            return
        for arrow in choices[idx]:
            acc.append(arrow)
            rec(idx + 1, acc)
            acc.pop()

    rec(0, [])
    return out


def robbins_star_enum(k, x, u, v, w):
    """Modified Robbins polynomial by enumeration: the generating function of
    down-arrowed monotone triangles with bottom row k.  Decorations factor per
    entry, so each triangle contributes its polynomial weight."""
    total = Fraction(0)
    for M in monotone_triangles(tuple(k)):
        total += mt_weight(M, x, u, v, w)
    return total


def robbins_star_bialternant(k, x, u, v, w):
    """Modified Robbins polynomial by the antisymmetrizer formula; the x_i
    must be pairwise distinct."""
    k = tuple(int(val) for val in k)
    x = tuple(Fraction(val) for val in x)
    u, v, w = Fraction(u), Fraction(v), Fraction(w)
    n = len(k)
    if len(x) != n:
        raise ValueError("need one variable per bottom-row entry")
    if len(set(x)) != n:
        raise PoleError("x_i - x_j")

    def g(xs):
        val = Fraction(1)
        for i in range(n):
            for j in range(i + 1, n):
                val *= u * xs[i] * xs[j] + v + w * xs[i]
        for i in range(n):
            val *= xs[i] ** k[i]
        return val

    num = antisymmetrize(g, x)
    den = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            den *= x[j] - x[i]
    return num / den


def robbins_bialternant(k, x, t, u, v, w):
    """Ordinary Robbins polynomial: the diagonal i = j is included in the
    product, an extra parameter t appears, and exponents are shifted by -1.
    Defined for any integer sequence k (signs may appear when k is not
    strictly increasing)."""
    k = tuple(int(val) for val in k)
    x = tuple(Fraction(val) for val in x)
    t, u, v, w = Fraction(t), Fraction(u), Fraction(v), Fraction(w)
    n = len(k)
    if len(x) != n:
        raise ValueError("need one variable per entry of k")
    if len(set(x)) != n:
        raise PoleError("x_i - x_j")
    if any(val == 0 for val in x) and any(val <= 0 for val in k):
        raise PoleError("x_i (negative exponent)")

    def g(xs):
        val = Fraction(1)
        for i in range(n):
            for j in range(i, n):
                val *= t * xs[j] + u * xs[i] * xs[j] + v + w * xs[i]
        for i in range(n):
            val *= xs[i] ** (k[i] - 1)
        return val

    num = antisymmetrize(g, x)
    den = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            den *= x[j] - x[i]
    return num / den
