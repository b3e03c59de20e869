"""Skew-symmetric matrices, exact Pfaffians, and the Pfaffian right-hand sides.

The Pfaffian is computed by a Laplace expansion memoized over label subsets;
the signed perfect-matching sum is kept as an independent cross-check for
small dimensions.  Entries may be any commutative ring elements supporting
+, -, * (exact rationals or truncated power series).
"""

from dataclasses import dataclass
from fractions import Fraction

from .arith import ParamPoint, PoleError


def det(rows):
    """Exact determinant of a square matrix of rationals (Gaussian elimination)."""
    m = [[Fraction(v) for v in row] for row in rows]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        out *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return sign * out


class SkewMatrix:
    """Skew-symmetric matrix given by an ordered label list and its upper triangle.

    ``labels`` fixes the row/column order; ``upper`` maps (a, b) with a before
    b in that order to the entry.  The lower triangle and zero diagonal are
    implicit.
    """

    def __init__(self, labels, upper):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")
        self._pos = {lab: i for i, lab in enumerate(self.labels)}
        self.upper = dict(upper)
        for a, b in self.upper:
            if self._pos[a] >= self._pos[b]:
                raise ValueError("upper entries must be keyed (earlier, later)")

    @classmethod
    def from_function(cls, labels, fn):
        labels = tuple(labels)
        upper = {}
        for i, a in enumerate(labels):
            for b in labels[i + 1 :]:
                upper[(a, b)] = fn(a, b)
        return cls(labels, upper)

    @property
    def dim(self):
        return len(self.labels)

    def entry(self, a, b):
        if a == b:
            return 0
        if self._pos[a] < self._pos[b]:
            return self.upper.get((a, b), 0)
        return -self.upper.get((b, a), 0)

    def restrict(self, sub_labels):
        sub = tuple(sub_labels)
        missing = [lab for lab in sub if lab not in self._pos]
        if missing:
            raise KeyError("labels %r not present" % (missing,))
        return SkewMatrix.from_function(sub, self.entry)

    def permute_positions(self, sigma):
        """Simultaneous row/column permutation: position i holds old position sigma[i]."""
        new_order = tuple(self.labels[s] for s in sigma)
        return SkewMatrix.from_function(new_order, lambda a, b: self.entry(a, b))

    def conjugate_diag(self, diag):
        """B A B with B = diag(diag[label]); clears denominators entrywise."""
        return SkewMatrix(
            self.labels,
            {(a, b): diag[a] * val * diag[b] for (a, b), val in self.upper.items()},
        )

    def pfaffian(self):
        """Pfaffian via Laplace expansion, memoized over label subsets."""
        m = self.dim
        if m % 2:
            raise ValueError("Pfaffian requires even dimension, got %d" % m)
        labels = self.labels
        memo = {}

        def pf(positions):
            if not positions:
                return 1
            if positions in memo:
                return memo[positions]
            first = positions[0]
            acc = 0
            for idx in range(1, len(positions)):
                a = self.entry(labels[first], labels[positions[idx]])
                if not a:
                    continue
                rest = positions[1:idx] + positions[idx + 1 :]
                term = a * pf(rest)
                acc = acc + term if idx % 2 else acc - term
            memo[positions] = acc
            return acc

        return pf(tuple(range(m)))

    def pfaffian_matchings(self):
        """Pfaffian straight from the signed perfect-matching sum (small dims)."""
        m = self.dim
        if m % 2:
            raise ValueError("Pfaffian requires even dimension, got %d" % m)
        labels = self.labels
        total = 0
        for matching in _perfect_matchings(tuple(range(m))):
            word = [pos for pair in matching for pos in pair]
            prod = 1
            for i, j in matching:
                prod = prod * self.entry(labels[i], labels[j])
            total = total + _word_sign(word) * prod
        return total


def _perfect_matchings(positions):
    if not positions:
        yield ()
        return
    first = positions[0]
    for idx in range(1, len(positions)):
        partner = positions[idx]
        rest = positions[1:idx] + positions[idx + 1 :]
        for sub in _perfect_matchings(rest):
            yield ((first, partner),) + sub


def _word_sign(word):
    inv = sum(
        1
        for i in range(len(word))
        for j in range(i + 1, len(word))
        if word[i] > word[j]
    )
    return -1 if inv % 2 else 1


def subset_labels(T):
    """Label set of the Pfaffian block for a subset T of [n]: T plus the extra
    label 0 exactly when |T| is odd, which keeps the dimension even."""
    T = tuple(sorted(T))
    return ((0,) + T) if len(T) % 2 else T


def b_matrix(U, V, point, u=None):
    """Diagonal conjugator indexed like the block for V: 1 at label 0 and
    prod over k in U, k > i of (1-u_i u_k)(1-q u_i u_k) at label i."""
    q = point.q
    u = point.u if u is None else tuple(u)
    diag = {}
    for lab in subset_labels(V):
        if lab == 0:
            diag[lab] = Fraction(1)
        else:
            val = Fraction(1)
            for k in sorted(U):
                if k > lab:
                    val *= (1 - u[lab - 1] * u[k - 1]) * (1 - q * u[lab - 1] * u[k - 1])
            diag[lab] = val
    return diag


def _inv_scalar(val, what="denominator"):
    if val == 0:
        raise PoleError(what)
    return 1 / val


def m_gamma_entry(i, j, u, t, gamma, s, gamma_inv_s, invert=_inv_scalar):
    """Entry (i, j), i < j, of the gamma-refined Pfaffian matrix.

    ``u`` is the 0-based list of spectral values (ring elements), the scalars
    t, gamma, s, gamma_inv_s are exact rationals, and ``invert`` supplies the
    ring inverse.  At gamma = 1 the correction terms drop and no inverses of
    (1 - s u) are needed.
    """
    q = t * t
    if i == 0:
        if gamma == 1:
            return Fraction(1)
        uj = u[j - 1]
        return 1 + (gamma - 1) * (t - gamma_inv_s) * (1 - uj) * invert(
            (1 + t) * (1 - s * uj), "(1+t)(1 - s*u_%d)" % j
        )
    ui, uj = u[i - 1], u[j - 1]
    uij = ui * uj
    core = (1 + q) * (1 - t * uij) + (ui + uj) * (t - q)
    if gamma != 1:
        bracket = (
            (1 + t) * (1 + gamma_inv_s) * (1 + q * gamma * uij)
            + (1 + gamma) * (q - gamma_inv_s) * (1 - t * uij)
            - (1 + gamma) * t * (t + gamma_inv_s) * (ui + uj)
        )
        f = (
            (t - gamma_inv_s)
            * (1 - uij)
            * invert(
                (1 + t) * (1 - s * ui) * (1 - s * uj),
                "(1+t)(1 - s*u_%d)(1 - s*u_%d)" % (i, j),
            )
            * bracket
        )
        core = core + (gamma - 1) * f
    return (
        (ui - uj)
        * core
        * invert(
            (1 + t) * (1 - uij) * (1 - q * uij),
            "(1+t)(1 - u_%d*u_%d)(1 - q*u_%d*u_%d)" % (i, j, i, j),
        )
    )


@dataclass(frozen=True)
class MGammaSpec:
    """Data defining the gamma-refined matrix: a point, gamma, and the scalar s
    standing in for the first spin value in the entries.

    ``gamma_inv_s`` defaults to s/gamma; passing it explicitly supports the
    s = 0 then gamma = 0 specialization, where s/gamma is identically 0.
    """

    point: ParamPoint
    gamma: Fraction
    s: Fraction
    gamma_inv_s: Fraction = None

    def __post_init__(self):
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        object.__setattr__(self, "s", Fraction(self.s))
        if self.gamma_inv_s is None:
            if self.gamma == 0:
                if self.s != 0:
                    raise ValueError("gamma = 0 requires s = 0 or an explicit gamma_inv_s")
                object.__setattr__(self, "gamma_inv_s", Fraction(0))
            else:
                object.__setattr__(self, "gamma_inv_s", self.s / self.gamma)
        else:
            object.__setattr__(self, "gamma_inv_s", Fraction(self.gamma_inv_s))


def m_gamma(spec, T, u=None):
    """Skew matrix of the gamma-refined Pfaffian over the block labels of T.

    ``u`` optionally overrides the point's spectral values (used for the
    substituted matrices in the key-lemma checks)."""
    uvals = spec.point.u if u is None else tuple(u)
    return SkewMatrix.from_function(
        subset_labels(T),
        lambda a, b: m_gamma_entry(a, b, uvals, spec.point.t, spec.gamma, spec.s, spec.gamma_inv_s),
    )


def m_conjugated(spec, T, u=None):
    """The matrix over T conjugated by the diagonal B(T, T), with polynomial entries."""
    return m_gamma(spec, T, u=u).conjugate_diag(b_matrix(tuple(T), tuple(T), spec.point, u=u))


def rhs_main1(point, n=None):
    """Product side of the factorized Littlewood identity."""
    n = point.n if n is None else n
    u = point.u[:n]
    q = point.q
    out = Fraction(1)
    for i in range(n):
        out *= _inv_scalar(1 - u[i], "1 - u_%d" % (i + 1))
    for i in range(n):
        for j in range(i + 1, n):
            out *= (1 - q * u[i] * u[j]) * _inv_scalar(
                1 - u[i] * u[j], "1 - u_%d*u_%d" % (i + 1, j + 1)
            )
    return out


def rhs_main2(spec, n=None):
    """Kernel times Pfaffian on the gamma-refined identity's product side."""
    point = spec.point
    n = point.n if n is None else n
    u = point.u[:n]
    t = point.t
    q = point.q
    out = Fraction(1)
    for i in range(n):
        out *= (1 + t) * _inv_scalar(1 - u[i], "1 - u_%d" % (i + 1))
    for i in range(n):
        for j in range(i + 1, n):
            out *= (1 - q * u[i] * u[j]) * _inv_scalar(
                u[i] - u[j], "u_%d - u_%d" % (i + 1, j + 1)
            )
    return out * m_gamma(spec, tuple(range(1, n + 1))).pfaffian()


def cor_entry(i, j, u, t):
    """Entry (i, j) of the gamma = 1 matrix, written out directly: the row 0
    entries are 1 and for i >= 1 the entry is
    (u_i-u_j)((1+q)(1-t u_i u_j)+(u_i+u_j)(t-q)) / ((1+t)(1-u_i u_j)(1-q u_i u_j))."""
    if i == 0:
        return Fraction(1)
    q = t * t
    ui, uj = u[i - 1], u[j - 1]
    uij = ui * uj
    num = (ui - uj) * ((1 + q) * (1 - t * uij) + (ui + uj) * (t - q))
    return num * _inv_scalar(
        (1 + t) * (1 - uij) * (1 - q * uij),
        "(1+t)(1 - u_%d*u_%d)(1 - q*u_%d*u_%d)" % (i, j, i, j),
    )


def rhs_cor(point, n=None):
    """Product side of the Pfaffian-form identity at gamma = 1, built from the
    explicit matrix rather than the gamma-refined entries."""
    n = point.n if n is None else n
    u = point.u[:n]
    t = point.t
    q = point.q
    out = Fraction(1)
    for i in range(n):
        out *= (1 + t) * _inv_scalar(1 - u[i], "1 - u_%d" % (i + 1))
    for i in range(n):
        for j in range(i + 1, n):
            out *= (1 - q * u[i] * u[j]) * _inv_scalar(
                u[i] - u[j], "u_%d - u_%d" % (i + 1, j + 1)
            )
    mat = SkewMatrix.from_function(
        subset_labels(tuple(range(1, n + 1))), lambda a, b: cor_entry(a, b, u, t)
    )
    return out * mat.pfaffian()
