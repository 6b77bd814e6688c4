"""Isotropy data of the three real flag manifolds of g2.

All vectors are KVectors: 6-tuples of QF13 in the orthonormal basis
(W1, W2, W3, Z1, Z2, Z3) of k.  Module generators are kept unnormalized
(e.g. sqrt13*W2 + 2*Z2, with squared norm 17) so that no square root
outside Q(sqrt13) is ever needed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction as F
from functools import lru_cache

from .exactfield import ONE, QF13, SQRT13, ZERO, as_qf13, rank, solve
from .g2core import WZ_LABELS, k_bracket, k_inner, xy_to_wz

W1, W2, W3, Z1, Z2, Z3 = (tuple(ONE if k == i else ZERO for k in range(6)) for i in range(6))


def kvec(*coords) -> tuple:
    return tuple(as_qf13(c) for c in coords)


def vadd(*vs) -> tuple:
    return tuple(sum(col, ZERO) for col in zip(*vs))


def vscale(c, v) -> tuple:
    c = as_qf13(c)
    return tuple(c * x for x in v)


def vneg(v) -> tuple:
    return vscale(-1, v)


def kvec_text(v) -> str:
    """Human-readable form such as ``sqrt13*W2 + 2*Z2``."""
    terms = []
    for c, name in zip(v, WZ_LABELS):
        if c.is_zero():
            continue
        if c == ONE:
            terms.append(name)
        elif c == -ONE:
            terms.append(f"-{name}")
        else:
            s = str(c)
            terms.append(f"({s})*{name}" if " " in s else f"{s}*{name}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


class FlagId(enum.Enum):
    EMPTY = "empty"
    ALPHA1 = "a1"
    ALPHA2 = "a2"

    @classmethod
    def parse(cls, text) -> FlagId:
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("_", "").replace("{", "").replace("}", "")
        aliases = {
            "empty": cls.EMPTY, "e": cls.EMPTY, "0": cls.EMPTY, "∅": cls.EMPTY, "none": cls.EMPTY,
            "a1": cls.ALPHA1, "alpha1": cls.ALPHA1, "α1": cls.ALPHA1, "α₁": cls.ALPHA1,
            "a2": cls.ALPHA2, "alpha2": cls.ALPHA2, "α2": cls.ALPHA2, "α₂": cls.ALPHA2,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown flag {text!r}; expected empty, a1 or a2") from None


@dataclass(frozen=True)
class Module:
    generators: tuple
    norms: tuple  # (g, g) for each generator

    @property
    def dim(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class EquivPair:
    """Equivariant isomorphism from module ``source`` to module ``target``.

    ``images[k]`` is the image of the k-th generator of the source module.
    """

    source: int
    target: int
    images: tuple


@dataclass(frozen=True)
class FlagData:
    theta: FlagId
    isotropy: tuple
    modules: tuple
    equiv_pairs: tuple
    basis: tuple = field(init=False)
    basis_norms: tuple = field(init=False)
    basis_module: tuple = field(init=False)

    def __post_init__(self):
        basis, norms, owner = [], [], []
        for i, m in enumerate(self.modules):
            basis += m.generators
            norms += m.norms
            owner += [i] * m.dim
        object.__setattr__(self, "basis", tuple(basis))
        object.__setattr__(self, "basis_norms", tuple(norms))
        object.__setattr__(self, "basis_module", tuple(owner))

    @property
    def dims(self) -> tuple:
        return tuple(m.dim for m in self.modules)

    @property
    def dim_m(self) -> int:
        return len(self.basis)

    def to_vector(self, coeffs) -> tuple:
        """KVector with the given coordinates in the ordered basis."""
        if len(coeffs) != self.dim_m:
            raise ValueError(f"expected {self.dim_m} coefficients, got {len(coeffs)}")
        return vadd(*(vscale(c, b) for c, b in zip(coeffs, self.basis)))

    def coords(self, v) -> tuple:
        """Coordinates of ``v`` in the (orthogonal) basis; ``v`` must lie in m."""
        out = tuple(k_inner(v, b) / n for b, n in zip(self.basis, self.basis_norms))
        if self.to_vector(out) != tuple(v):
            raise ValueError("vector is not in the reductive complement m")
        return out

    def project_m(self, v) -> tuple:
        """Orthogonal projection onto m, as basis coordinates."""
        return tuple(k_inner(v, b) / n for b, n in zip(self.basis, self.basis_norms))

    def module_part(self, v, i: int) -> tuple:
        """Orthogonal projection of ``v`` onto module ``i`` (a KVector)."""
        m = self.modules[i]
        return vadd(ZERO6, *(vscale(k_inner(v, g) / n, g) for g, n in zip(m.generators, m.norms)))


ZERO6 = (ZERO,) * 6


def _module(*gens) -> Module:
    return Module(tuple(gens), tuple(k_inner(g, g) for g in gens))


@lru_cache(maxsize=None)
def flag_data(theta) -> FlagData:
    theta = FlagId.parse(theta)
    if theta is FlagId.EMPTY:
        order = (W1, Z3, W2, Z2, W3, Z1)
        mods = tuple(_module(b) for b in order)
        pairs = tuple(EquivPair(2 * k, 2 * k + 1, (order[2 * k + 1],)) for k in range(3))
        return FlagData(theta, (), mods, pairs)
    if theta is FlagId.ALPHA1:
        mods = (_module(Z3), _module(W2, W3), _module(Z2, vneg(Z1)))
        return FlagData(theta, (W1,), mods, (EquivPair(1, 2, (Z2, vneg(Z1))),))
    r13 = SQRT13
    iso = vadd(vscale(r13, Z2), vscale(-2, W2))
    mods = (
        _module(vadd(vscale(r13, W2), vscale(2, Z2))),
        _module(vadd(W1, Z3), vadd(W3, Z1)),
        _module(vadd(W1, vneg(Z3)), vadd(W3, vneg(Z1))),
    )
    return FlagData(theta, (iso,), mods, ())


def all_flags() -> tuple:
    return tuple(flag_data(t) for t in FlagId)


# -- checks -------------------------------------------------------------------------


@dataclass
class Report:
    name: str
    passed: bool = True
    violations: list = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.passed = False
        self.violations.append(msg)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "violations": list(self.violations)}


def same_span(a, b) -> bool:
    a, b = list(a), list(b)
    ra = rank(a) if a else 0
    rb = rank(b) if b else 0
    return ra == rb == rank(a + b)


def _in_span(v, gens) -> bool:
    return rank(list(gens) + [v]) == rank(list(gens))


def module_invariance_check(data: FlagData) -> Report:
    """[k, m] lies in the module for every isotropy and module generator."""
    rep = Report(f"module_invariance[{data.theta.value}]")
    for i, mod in enumerate(data.modules):
        for k in data.isotropy:
            for g in mod.generators:
                br = k_bracket(k, g)
                if not _in_span(br, mod.generators):
                    rep.fail(f"module {i + 1}: [{kvec_text(k)}, {kvec_text(g)}] = {kvec_text(br)} leaves the module")
    return rep


def _apply_pair(pair: EquivPair, data: FlagData, v) -> tuple:
    src = data.modules[pair.source]
    cols = [[g[r] for g in src.generators] for r in range(6)]
    coeffs = solve(cols, list(v))
    if coeffs is None:
        raise ValueError("vector not in the source module")
    return vadd(ZERO6, *(vscale(c, img) for c, img in zip(coeffs, pair.images)))


def equivariance_check(data: FlagData) -> Report:
    """T([k, m]) = [k, T(m)] and T isometric on generators, for every equivalent pair."""
    rep = Report(f"equivariance[{data.theta.value}]")
    for pair in data.equiv_pairs:
        src, dst = data.modules[pair.source], data.modules[pair.target]
        if not same_span(pair.images, dst.generators):
            rep.fail(f"pair {pair.source + 1}->{pair.target + 1}: images do not span the target module")
        for a, ga in enumerate(src.generators):
            for b, gb in enumerate(src.generators):
                if k_inner(pair.images[a], pair.images[b]) != k_inner(ga, gb):
                    rep.fail(f"pair {pair.source + 1}->{pair.target + 1}: not an isometry on generators {a + 1},{b + 1}")
            for k in data.isotropy:
                lhs = _apply_pair(pair, data, k_bracket(k, ga))
                rhs = k_bracket(k, pair.images[a])
                if lhs != rhs:
                    rep.fail(
                        f"pair {pair.source + 1}->{pair.target + 1}: T([{kvec_text(k)}, {kvec_text(ga)}]) = "
                        f"{kvec_text(lhs)} but [k, T(m)] = {kvec_text(rhs)}"
                    )
    return rep


def decomposition_check(data: FlagData) -> Report:
    """k_Theta + sum of modules = k (rank 6), all pieces mutually orthogonal."""
    rep = Report(f"decomposition[{data.theta.value}]")
    pieces = [list(data.isotropy)] + [list(m.generators) for m in data.modules]
    total = [v for p in pieces for v in p]
    if rank(total) != 6 or len(total) != 6:
        rep.fail(f"rank of k_Theta + modules is {rank(total)}, expected 6")
    for i, p in enumerate(pieces):
        for j, q in enumerate(pieces):
            if i < j and any(not k_inner(u, v).is_zero() for u in p for v in q):
                rep.fail(f"pieces {i} and {j} are not orthogonal")
    for mod in data.modules:
        for a, u in enumerate(mod.generators):
            for b, v in enumerate(mod.generators):
                want = mod.norms[a] if a == b else ZERO
                if k_inner(u, v) != want:
                    rep.fail(f"module generators {kvec_text(u)}, {kvec_text(v)} not orthogonal with stored norms")
    return rep


# Submodules in the older X/Y description, with the spans they must equal.
def _xy(*c) -> tuple:
    return xy_to_wz(tuple(as_qf13(x) for x in c))


def legacy_submodules(theta) -> tuple:
    """(old_span, new_span) pairs, old spans given in X/Y coordinates."""
    theta = FlagId.parse(theta)
    h = QF13(F(3, 2))
    r13 = SQRT13
    if theta is FlagId.EMPTY:
        return (
            ((_xy(1, 0, 0, 0, 0, -h),), (Z3,)),
            ((_xy(0, 1, 0, 0, h, 0),), (Z2,)),
            ((_xy(0, 0, 1, -h, 0, 0),), (Z1,)),
            ((_xy(1, 0, 0, 0, 0, 0),), (W1,)),
            ((_xy(0, 1, 0, 0, 0, 0),), (W2,)),
            ((_xy(0, 0, 1, 0, 0, 0),), (W3,)),
        )
    if theta is FlagId.ALPHA1:
        return (
            ((_xy(1, 0, 0, 0, 0, 0),), (W1,)),  # isotropy
            ((_xy(0, 1, 0, 0, h, 0), _xy(0, 0, 1, -h, 0, 0)), (Z2, vneg(Z1))),
            ((_xy(0, 1, 0, 0, 0, 0), _xy(0, 0, 1, 0, 0, 0)), (W2, W3)),
        )
    a, b = r13 - 2, r13 + 2
    return (
        ((_xy(0, 0, 0, 0, 1, 0),), (vadd(vscale(r13, Z2), vscale(-2, W2)),)),  # isotropy
        ((_xy(0, 0, a, 3, 0, 0), _xy(a, 0, 0, 0, 0, 3)), (vadd(W3, Z1), vadd(W1, Z3))),
        ((_xy(0, 0, b, -3, 0, 0), _xy(b, 0, 0, 0, 0, -3)), (vadd(W3, vneg(Z1)), vadd(W1, vneg(Z3)))),
    )


def graph_submodule_check(theta) -> Report:
    rep = Report(f"graph_submodules[{FlagId.parse(theta).value}]")
    for old, new in legacy_submodules(theta):
        if not same_span(old, new):
            rep.fail(f"span{{{', '.join(map(kvec_text, old))}}} != span{{{', '.join(map(kvec_text, new))}}}")
    return rep


def tilde_t_check() -> Report:
    """T~(W) = 2/sqrt13 (W + 3/2 T(W)) with T: X2 -> Y2, X3 -> -Y1."""
    rep = Report("tilde_T[a1]")
    c = 2 / SQRT13
    for w, ty, want in ((W2, _xy(0, 0, 0, 0, 1, 0), Z2), (W3, _xy(0, 0, 0, -1, 0, 0), vneg(Z1))):
        # T is linear with T(X_i) = Y_j and W_i = X_i / 2
        got = vscale(c, vadd(w, vscale(F(3, 4), ty)))
        if got != want:
            rep.fail(f"T~({kvec_text(w)}) = {kvec_text(got)}, expected {kvec_text(want)}")
    return rep


def flag_reports(theta) -> list:
    data = flag_data(theta)
    return [
        decomposition_check(data),
        module_invariance_check(data),
        equivariance_check(data),
        graph_submodule_check(data.theta),
    ]


def flag_to_json(data: FlagData) -> dict:
    def vec(v):
        return {"text": kvec_text(v), "coords": [x.to_text() for x in v]}

    return {
        "theta": data.theta.value,
        "dims": list(data.dims),
        "isotropy": [vec(v) for v in data.isotropy],
        "modules": [
            {"generators": [vec(g) for g in m.generators], "norms2": [n.to_text() for n in m.norms]}
            for m in data.modules
        ],
        "basis": [vec(b) for b in data.basis],
        "equiv_pairs": [
            {"source": p.source + 1, "target": p.target + 1, "images": [vec(v) for v in p.images]}
            for p in data.equiv_pairs
        ],
    }
