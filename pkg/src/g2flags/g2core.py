"""The split real form of g2 as sl(3) + R^3 + (R^3)*, and its compact part k.

Elements are :class:`G2Element` triples ``(mat, vec, cov)``.  Heavier checks
(Jacobi identity, Killing form, Gram-Schmidt) run on precomputed rational
structure constants rather than on elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .exactfield import ONE, QF13, ZERO, as_qf13, inverse, rank

F = Fraction

Vec3 = tuple  # 3-tuple of QF13
Mat3 = tuple  # 3x3 tuple of tuples of QF13


def _vec(v) -> Vec3:
    return tuple(as_qf13(x) for x in v)


def _mat(m) -> Mat3:
    return tuple(tuple(as_qf13(x) for x in row) for row in m)


_ZV = (ZERO, ZERO, ZERO)
_ZM = (_ZV, _ZV, _ZV)


def cross(u: Vec3, v: Vec3) -> Vec3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def wedge_T(u, v) -> Vec3:
    """Covector ``w -> det[u v w]`` (the isomorphism T on u ^ v)."""
    return cross(_vec(u), _vec(v))


def wedge_S(a, b) -> Vec3:
    """Vector S(a ^ b) with ``a ^ b ^ c = c(S(a ^ b)) nu*`` for every covector c."""
    return cross(_vec(a), _vec(b))


def _mm(x: Mat3, y: Mat3) -> Mat3:
    return tuple(tuple(sum((x[i][k] * y[k][j] for k in range(3)), ZERO) for j in range(3)) for i in range(3))


def _madd(x: Mat3, y: Mat3, s: int = 1) -> Mat3:
    return tuple(tuple(x[i][j] + s * y[i][j] for j in range(3)) for i in range(3))


def _mv(x: Mat3, v: Vec3) -> Vec3:
    return tuple(sum((x[i][k] * v[k] for k in range(3)), ZERO) for i in range(3))


def _mtv(x: Mat3, a: Vec3) -> Vec3:
    # covector a o X, i.e. (X^T a)
    return tuple(sum((a[k] * x[k][j] for k in range(3)), ZERO) for j in range(3))


def _vadd(u: Vec3, v: Vec3, s: int = 1) -> Vec3:
    return tuple(a + s * b for a, b in zip(u, v))


def _vscale(c, u: Vec3) -> Vec3:
    return tuple(c * a for a in u)


def _outer_bracket(v: Vec3, a: Vec3) -> Mat3:
    """[v, alpha] = (v^i alpha^j) - alpha(v)/3 I."""
    tr = sum((x * y for x, y in zip(v, a)), ZERO) * F(1, 3)
    return tuple(tuple(v[i] * a[j] - (tr if i == j else ZERO) for j in range(3)) for i in range(3))


@dataclass(frozen=True)
class G2Element:
    mat: Mat3 = _ZM
    vec: Vec3 = _ZV
    cov: Vec3 = _ZV

    def __post_init__(self):
        object.__setattr__(self, "mat", _mat(self.mat))
        object.__setattr__(self, "vec", _vec(self.vec))
        object.__setattr__(self, "cov", _vec(self.cov))
        if not (self.mat[0][0] + self.mat[1][1] + self.mat[2][2]).is_zero():
            raise ValueError("sl(3) part must be traceless")

    def __add__(self, o: G2Element) -> G2Element:
        return G2Element(_madd(self.mat, o.mat), _vadd(self.vec, o.vec), _vadd(self.cov, o.cov))

    def __sub__(self, o: G2Element) -> G2Element:
        return G2Element(_madd(self.mat, o.mat, -1), _vadd(self.vec, o.vec, -1), _vadd(self.cov, o.cov, -1))

    def __neg__(self) -> G2Element:
        return self.scale(-1)

    def scale(self, c) -> G2Element:
        c = as_qf13(c)
        return G2Element(tuple(_vscale(c, r) for r in self.mat), _vscale(c, self.vec), _vscale(c, self.cov))

    __rmul__ = scale

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.flat())

    def flat(self) -> tuple:
        return tuple(x for row in self.mat for x in row) + self.vec + self.cov


@dataclass(frozen=True)
class BracketConstants:
    """Scalars in ``[u, v] = vv*T(u^v)`` and ``[a, b] = cc*S(a^b)``."""

    vv: Fraction = F(-4, 3)
    cc: Fraction = F(4, 3)

    def jacobi_consistent(self) -> bool:
        # forced by the (e_i, eps_i, eps_j) and (e_i, e_j, eps_i) triples
        return self.vv * self.cc == F(-4, 3)


PUBLISHED_CONSTANTS = BracketConstants()
# a rational pair satisfying the Jacobi identity (it does not give k's (4/3) Y terms)
JACOBI_CONSTANTS = BracketConstants(F(-1), F(4, 3))


def g2_bracket(x: G2Element, y: G2Element, constants: BracketConstants = PUBLISHED_CONSTANTS) -> G2Element:
    """Lie bracket of g2, bilinear skew extension of the six component rules."""
    mat = _madd(
        _madd(_madd(_mm(x.mat, y.mat), _mm(y.mat, x.mat), -1), _outer_bracket(x.vec, y.cov)),
        _outer_bracket(y.vec, x.cov),
        -1,
    )
    vec = _vadd(
        _vadd(_mv(x.mat, y.vec), _mv(y.mat, x.vec), -1),
        _vscale(constants.cc, wedge_S(x.cov, y.cov)),
    )
    cov = _vadd(
        _vadd(_mtv(y.mat, x.cov), _mtv(x.mat, y.cov), -1),
        _vscale(constants.vv, wedge_T(x.vec, y.vec)),
    )
    return G2Element(mat, vec, cov)


# -- standard basis ------------------------------------------------------------


def E(i: int, j: int) -> G2Element:
    """Matrix unit E_ij (1-based), i != j."""
    m = [[0] * 3 for _ in range(3)]
    m[i - 1][j - 1] = 1
    return G2Element(mat=m)


def H(a1, a2, a3) -> G2Element:
    return G2Element(mat=[[a1, 0, 0], [0, a2, 0], [0, 0, a3]])


def e(i: int) -> G2Element:
    v = [0, 0, 0]
    v[i - 1] = 1
    return G2Element(vec=v)


def eps(i: int) -> G2Element:
    v = [0, 0, 0]
    v[i - 1] = 1
    return G2Element(cov=v)


STANDARD_LABELS = (
    "H1", "H2", "E12", "E13", "E21", "E23", "E31", "E32",
    "e1", "e2", "e3", "eps1", "eps2", "eps3",
)


@lru_cache(maxsize=None)
def standard_basis() -> tuple:
    """H1 = E11-E22, H2 = E22-E33, the six E_ij, e_i, eps_i (14 elements)."""
    out = [H(1, -1, 0), H(0, 1, -1)]
    out += [E(i, j) for i in (1, 2, 3) for j in (1, 2, 3) if i != j]
    out += [e(i) for i in (1, 2, 3)] + [eps(i) for i in (1, 2, 3)]
    return tuple(out)


def standard_coords(x: G2Element) -> tuple:
    """Coordinates of ``x`` in :func:`standard_basis`."""
    m = x.mat
    h1 = m[0][0]
    h2 = m[0][0] + m[1][1]
    offd = tuple(m[i][j] for i in range(3) for j in range(3) if i != j)
    return (h1, h2) + offd + x.vec + x.cov


@lru_cache(maxsize=None)
def structure_constants_g2(constants: BracketConstants = PUBLISHED_CONSTANTS) -> dict:
    """Sparse tensor {(i, j): {k: c}} with [b_i, b_j] = sum_k c b_k."""
    basis = standard_basis()
    table = {}
    for i, j in product(range(14), repeat=2):
        c = standard_coords(g2_bracket(basis[i], basis[j], constants))
        nz = {k: v for k, v in enumerate(c) if not v.is_zero()}
        if nz:
            table[(i, j)] = nz
    return table


def jacobi_violations(table: dict, n: int) -> list:
    """All (i, j, k) where the Jacobi identity fails for a sparse structure tensor."""

    def br(i, j):
        return table.get((i, j), {})

    def br_vec(vec: dict, k: int) -> dict:
        out = {}
        for m, c in vec.items():
            for l, d in br(m, k).items():
                out[l] = out.get(l, ZERO) + c * d
        return out

    bad = []
    for i, j, k in product(range(n), repeat=3):
        acc = {}
        for part in (br_vec(br(i, j), k), br_vec(br(j, k), i), br_vec(br(k, i), j)):
            for l, c in part.items():
                acc[l] = acc.get(l, ZERO) + c
        if any(not v.is_zero() for v in acc.values()):
            bad.append((i, j, k))
    return bad


# -- roots and parabolic subalgebras ----------------------------------------------


@dataclass(frozen=True)
class Root:
    """Root as integer coefficients on (lambda_1, lambda_2, lambda_3)."""

    lam: tuple

    def on(self, h: G2Element) -> QF13:
        return sum((c * h.mat[i][i] for i, c in enumerate(self.lam)), ZERO)

    def values(self) -> tuple:
        """Values on (H1, H2); identifies roots modulo lambda_1+lambda_2+lambda_3."""
        l1, l2, l3 = self.lam
        return (l1 - l2, l2 - l3)

    def __neg__(self):
        return Root(tuple(-c for c in self.lam))

    def label(self) -> str:
        names = []
        for i, c in enumerate(self.lam):
            if c:
                names.append(("+" if c > 0 else "-") + (f"{abs(c)}" if abs(c) != 1 else "") + f"l{i + 1}")
        s = "".join(names)
        return s[1:] if s.startswith("+") else s


@dataclass(frozen=True)
class RootDatum:
    roots: tuple
    positive_roots: tuple
    simple_roots: tuple
    root_vectors: dict


def _lam(i: int, sign: int = 1) -> tuple:
    v = [0, 0, 0]
    v[i - 1] = sign
    return tuple(v)


@lru_cache(maxsize=None)
def root_datum() -> RootDatum:
    vectors = {}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i != j:
                lam = [0, 0, 0]
                lam[i - 1] += 1
                lam[j - 1] -= 1
                vectors[Root(tuple(lam))] = E(i, j)
        vectors[Root(_lam(i))] = e(i)
        vectors[Root(_lam(i, -1))] = eps(i)
    positive = tuple(
        [Root(tuple(int(k == i) - int(k == j) for k in (1, 2, 3))) for i in (1, 2, 3) for j in (1, 2, 3) if i < j]
        + [Root(_lam(1)), Root(_lam(2)), Root(_lam(3, -1))]
    )
    simple = (Root((1, -1, 0)), Root((0, 1, 0)))
    return RootDatum(tuple(vectors), positive, simple, vectors)


def cartan_basis() -> tuple:
    return (H(1, -1, 0), H(0, 1, -1))


def simple_root_coefficients(root: Root) -> tuple:
    """Integer coefficients (n1, n2) with root = n1*alpha_1 + n2*alpha_2 on the Cartan."""
    a1, a2 = (r.values() for r in root_datum().simple_roots)
    v = root.values()
    det = a1[0] * a2[1] - a2[0] * a1[1]
    n1 = F(v[0] * a2[1] - a2[0] * v[1], det)
    n2 = F(a1[0] * v[1] - v[0] * a1[1], det)
    return (n1, n2)


FLAG_THETAS = {"empty": (), "a1": (0,), "a2": (1,)}


def parabolic_subalgebra(theta) -> list:
    """Generators of p_Theta = h + positive root spaces + <Theta>^- root spaces.

    ``theta`` is a tuple of simple-root indices (0 for alpha_1, 1 for alpha_2)
    or one of the keys of ``FLAG_THETAS``.
    """
    if isinstance(theta, str):
        theta = FLAG_THETAS[theta]
    rd = root_datum()
    pos = {r.values() for r in rd.positive_roots}
    gens = list(cartan_basis())
    for r in rd.roots:
        if r.values() in pos:
            gens.append(rd.root_vectors[r])
            continue
        n = simple_root_coefficients(r)
        if all(n[k] == 0 for k in range(2) if k not in theta):
            gens.append(rd.root_vectors[r])
    return gens


def is_subalgebra(gens) -> bool:
    rows = [standard_coords(g) for g in gens]
    r = rank(rows)
    for x, y in product(gens, repeat=2):
        if rank(rows + [standard_coords(g2_bracket(x, y))]) != r:
            return False
    return True


# -- the compact subalgebra k -------------------------------------------------------

K_LABELS = ("X1", "X2", "X3", "Y1", "Y2", "Y3")
WZ_LABELS = ("W1", "W2", "W3", "Z1", "Z2", "Z3")


@lru_cache(maxsize=None)
def compact_basis() -> tuple:
    """(X1, X2, X3, Y1, Y2, Y3) with X1 = E21-E12, X2 = E31-E13, X3 = E32-E23, Y_i = e_i - eps_i."""
    xs = (E(2, 1) - E(1, 2), E(3, 1) - E(1, 3), E(3, 2) - E(2, 3))
    ys = tuple(e(i) - eps(i) for i in (1, 2, 3))
    return xs + ys


def k_coords(x: G2Element) -> tuple:
    """Coordinates in (X1..Y3); raises ValueError if ``x`` is not in k."""
    m = x.mat
    c = (m[1][0], m[2][0], m[2][1], x.vec[0], x.vec[1], x.vec[2])
    if k_element(c) != x:
        raise ValueError("element is not in the compact subalgebra k")
    return c


def k_element(coords) -> G2Element:
    out = G2Element()
    for c, b in zip(coords, compact_basis()):
        c = as_qf13(c)
        if not c.is_zero():
            out = out + b.scale(c)
    return out


@lru_cache(maxsize=None)
def structure_constants_k() -> tuple:
    """6x6x6 tensor c[i][j][k] of k in the (X, Y) basis, computed in g2."""
    kb = compact_basis()
    return tuple(tuple(k_coords(g2_bracket(kb[i], kb[j])) for j in range(6)) for i in range(6))


def bracket_coords(c, u, v) -> tuple:
    """Bracket of coordinate vectors under the structure tensor ``c``."""
    n = len(u)
    out = [ZERO] * n
    for i in range(n):
        if u[i].is_zero():
            continue
        for j in range(n):
            if v[j].is_zero():
                continue
            uv = u[i] * v[j]
            row = c[i][j]
            for k in range(n):
                if not row[k].is_zero():
                    out[k] = out[k] + uv * row[k]
    return tuple(out)


def _ad_matrix(c, u) -> list:
    """Matrix of ad(u): column j is [u, b_j]."""
    n = len(u)
    cols = [bracket_coords(c, u, tuple(ONE if k == j else ZERO for k in range(n))) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def killing_matrix_k() -> tuple:
    """Gram matrix of (.,.) = -B_k on (X1..Y3), B_k(u, v) = tr(ad u ad v)."""
    c = structure_constants_k()
    unit = [tuple(ONE if k == j else ZERO for k in range(6)) for j in range(6)]
    ads = [_ad_matrix(c, u) for u in unit]
    g = []
    for i in range(6):
        row = []
        for j in range(6):
            tr = sum((ads[i][a][b] * ads[j][b][a] for a in range(6) for b in range(6)), ZERO)
            row.append(-tr)
        g.append(tuple(row))
    return tuple(g)


def killing_form(u, v) -> QF13:
    """(u, v) = -B(u, v) for coordinate vectors in the (X1..Y3) basis."""
    g = killing_matrix_k()
    u = [as_qf13(x) for x in u]
    v = [as_qf13(x) for x in v]
    return sum((u[i] * g[i][j] * v[j] for i in range(6) for j in range(6)), ZERO)


@lru_cache(maxsize=None)
def orthonormal_basis() -> tuple:
    """Gram-Schmidt of (X1, X2, X3, Y1, Y2, Y3) under (.,.).

    Each vector is normalized so its own X/Y coefficient is positive, which
    reproduces W_i = X_i/2 and Z_i = 3/(2 sqrt13) Y_i -/+ X_j/sqrt13.
    Returns rows (W1, W2, W3, Z1, Z2, Z3) in X/Y coordinates.
    """
    unit = [tuple(ONE if k == j else ZERO for k in range(6)) for j in range(6)]
    out = []
    for j, v in enumerate(unit):
        w = list(v)
        for q in out:
            p = killing_form(v, q)
            w = [a - p * b for a, b in zip(w, q)]
        n2 = killing_form(w, w)
        n = n2.sqrt()
        w = [a / n for a in w]
        if w[j].sign() < 0:
            w = [-a for a in w]
        out.append(tuple(w))
    return tuple(out)


@lru_cache(maxsize=None)
def wz_change_of_basis() -> tuple:
    """(P, P^-1): rows of P are W/Z in X/Y coordinates; P^-1 maps back."""
    p = [list(r) for r in orthonormal_basis()]
    pinv = inverse(p)
    return tuple(map(tuple, p)), tuple(map(tuple, pinv))


def xy_to_wz(coords) -> tuple:
    """Convert X/Y coordinates to W/Z coordinates."""
    _, pinv = wz_change_of_basis()
    # x = sum_i a_i (X/Y)_i, (X/Y)_i = sum_k Pinv[i][k] (W/Z)_k
    return tuple(sum((as_qf13(coords[i]) * pinv[i][k] for i in range(6)), ZERO) for k in range(6))


def wz_to_xy(coords) -> tuple:
    p, _ = wz_change_of_basis()
    return tuple(sum((as_qf13(coords[i]) * p[i][k] for i in range(6)), ZERO) for k in range(6))


@lru_cache(maxsize=None)
def structure_constants_wz() -> tuple:
    """Structure tensor of k in the orthonormal (W1..Z3) basis."""
    c = structure_constants_k()
    p, _ = wz_change_of_basis()
    return tuple(
        tuple(xy_to_wz(bracket_coords(c, p[i], p[j])) for j in range(6)) for i in range(6)
    )


def k_bracket(u, v) -> tuple:
    """Bracket of two KVectors given in W/Z coordinates."""
    return bracket_coords(structure_constants_wz(), tuple(map(as_qf13, u)), tuple(map(as_qf13, v)))


def k_inner(u, v) -> QF13:
    """(.,.) on W/Z coordinates (orthonormal, so a dot product)."""
    return sum((as_qf13(a) * as_qf13(b) for a, b in zip(u, v)), ZERO)


def unit_k(i: int) -> tuple:
    return tuple(ONE if k == i else ZERO for k in range(6))
