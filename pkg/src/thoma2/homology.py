"""Integral simplicial homology of normalized chain complexes.

Homology is only ever a necessary condition for a weak equivalence; the iso
probe reports agreement of homology groups and nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .report import Report
from .sset import SimplicialMap, SimplicialSet


# -- Smith normal form ---------------------------------------------------------------

def _identity(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


@dataclass
class Smith:
    """``P @ M @ Q = diag(d)`` with ``Pinv``, ``Qinv`` the inverse transforms."""

    d: list
    P: list | None = None
    Pinv: list | None = None
    Q: list | None = None
    Qinv: list | None = None

    @property
    def rank(self) -> int:
        return len(self.d)


def smith(M: list, rows: int | None = None, cols: int | None = None, track: bool = True) -> Smith:
    """Smith normal form over the integers by exact elimination on a dense copy."""
    m = len(M) if rows is None else rows
    n = (len(M[0]) if M else 0) if cols is None else cols
    A = [list(r) for r in M]
    P = _identity(m) if track else None
    Pinv = _identity(m) if track else None
    Q = _identity(n) if track else None
    Qinv = _identity(n) if track else None

    def swap_rows(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        if track:
            P[i], P[j] = P[j], P[i]
            for r in Pinv:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in A:
            r[i], r[j] = r[j], r[i]
        if track:
            for r in Q:
                r[i], r[j] = r[j], r[i]
            Qinv[i], Qinv[j] = Qinv[j], Qinv[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        a, b = A[dst], A[src]
        for k in range(n):
            if b[k]:
                a[k] += q * b[k]
        if track:
            a, b = P[dst], P[src]
            for k in range(m):
                if b[k]:
                    a[k] += q * b[k]
            for r in Pinv:
                if r[dst]:
                    r[src] -= q * r[dst]

    def add_col(dst, src, q):
        # col dst += q * col src
        for r in A:
            if r[src]:
                r[dst] += q * r[src]
        if track:
            for r in Q:
                if r[src]:
                    r[dst] += q * r[src]
            a, b = Qinv[src], Qinv[dst]
            for k in range(n):
                if b[k]:
                    a[k] -= q * b[k]

    d = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if track:
                P[t] = [-v for v in P[t]]
                for r in Pinv:
                    r[t] = -r[t]
        d.append(A[t][t])
        t += 1
    return Smith(d, P, Pinv, Q, Qinv)


def invariant_factors(rows: list[dict], ncols: int) -> list:
    """Non-zero invariant factors of a sparse matrix given as column->value dicts.

    Unit pivots are eliminated sparsely first; the remainder goes to ``smith``.
    """
    rows = [dict(r) for r in rows if r]
    col_rows: dict = {}
    for i, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    alive = set(range(len(rows)))
    units = 0
    while True:
        pick = None
        for i in sorted(alive, key=lambda i: len(rows[i])):
            r = rows[i]
            c = next((c for c, v in r.items() if v in (1, -1)), None)
            if c is not None:
                pick = (i, c)
                break
        if pick is None:
            break
        i, c = pick
        piv_row = rows[i]
        pv = piv_row[c]
        alive.discard(i)
        for c2 in piv_row:
            col_rows[c2].discard(i)
        for k in list(col_rows.get(c, ())):
            r = rows[k]
            q = r[c] * pv  # pv is a unit, so this is r[c] / pv
            for c2, v in piv_row.items():
                nv = r.get(c2, 0) - q * v
                if nv:
                    if c2 not in r:
                        col_rows[c2].add(k)
                    r[c2] = nv
                elif c2 in r:
                    del r[c2]
                    col_rows[c2].discard(k)
            if not r:
                alive.discard(k)
        units += 1
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    if not rest:
        return [1] * units
    cols = sorted({c for r in rest for c in r})
    ci = {c: k for k, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rest]
    for k, r in enumerate(rest):
        for c, v in r.items():
            dense[k][ci[c]] = v
    return [1] * units + smith(dense, track=False).d


# -- chain complexes ----------------------------------------------------------------

@dataclass
class ChainComplex:
    """Normalized chains: bases are non-degenerate simplices, faces with signs."""

    bases: dict
    index: dict
    boundary: dict  # n -> list over basis of C_n of {row in C_{n-1}: coeff}
    top: int

    def rank(self, n: int) -> int:
        return len(self.bases.get(n, ()))

    def check_dd(self) -> Report:
        rep = Report("boundary squares to zero")
        for n in range(2, self.top + 1):
            for j, col in enumerate(self.boundary[n]):
                acc: dict = {}
                for i, v in col.items():
                    for k, w in self.boundary[n - 1][i].items():
                        acc[k] = acc.get(k, 0) + v * w
                rep.tick("dd=0", not any(acc.values()), (n, self.bases[n][j]))
        return rep

    def dense_boundary(self, n: int) -> list:
        """Matrix of d_n : C_n -> C_{n-1} as rows indexed by C_{n-1}."""
        M = [[0] * self.rank(n) for _ in range(self.rank(n - 1))]
        for j, col in enumerate(self.boundary.get(n, [])):
            for i, v in col.items():
                M[i][j] = v
        return M


def chain_complex(K: SimplicialSet, top: int) -> ChainComplex:
    """Normalized chain complex of K in degrees 0..top."""
    if top > K.dim_cap:
        raise ValueError(f"{K.name} is only known up to degree {K.dim_cap}")
    bases = {n: list(K.nondeg.get(n, [])) for n in range(top + 1)}
    index = {n: {t: i for i, t in enumerate(b)} for n, b in bases.items()}
    boundary = {0: [{} for _ in bases[0]]}
    for n in range(1, top + 1):
        cols = []
        for t in bases[n]:
            col: dict = {}
            for i, y in enumerate(K.faces[t]):
                if y.degenerate:
                    continue
                r = index[n - 1][y.base]
                col[r] = col.get(r, 0) + (-1) ** i
            cols.append({r: v for r, v in col.items() if v})
        boundary[n] = cols
    return ChainComplex(bases, index, boundary, top)


def _complete(K: SimplicialSet) -> bool:
    return K.dimension() < K.dim_cap


def _check_range(K: SimplicialSet, cap: int, assume_complete: bool):
    if cap + 1 > K.dim_cap and not (assume_complete or _complete(K)):
        raise ValueError(
            f"degree {cap} homology of {K.name} needs simplices of degree {cap + 1}; "
            "pass assume_complete=True if there are none")


def homology(K: SimplicialSet, cap: int, assume_complete: bool = False) -> list:
    """[(betti, torsion)] for degrees 0..cap."""
    _check_range(K, cap, assume_complete)
    top = min(cap + 1, K.dim_cap)
    C = chain_complex(K, top)
    ranks, factors = {}, {}
    for n in range(1, top + 1):
        rows: list = [dict() for _ in range(C.rank(n - 1))]
        for j, col in enumerate(C.boundary[n]):
            for i, v in col.items():
                rows[i][j] = v
        f = invariant_factors(rows, C.rank(n))
        ranks[n], factors[n] = len(f), f
    out = []
    for n in range(cap + 1):
        betti = C.rank(n) - ranks.get(n, 0) - ranks.get(n + 1, 0)
        torsion = sorted(d for d in factors.get(n + 1, []) if d > 1)
        out.append((betti, torsion))
    return out


def betti(K: SimplicialSet, cap: int, assume_complete: bool = False) -> tuple:
    return tuple(b for b, _ in homology(K, cap, assume_complete))


def euler_characteristic(K: SimplicialSet) -> int:
    return sum((-1) ** n * len(K.nondeg.get(n, ())) for n in range(K.dim_cap + 1))


# -- homology with generators and induced maps ----------------------------------------

def _matvec(M, v):
    return [sum(a * b for a, b in zip(row, v) if a and b) for row in M]


@dataclass
class HomologyGroup:
    """H_n as Z^free + sum Z/t, with a coordinate map on cycles and generating cycles."""

    n: int
    torsion: list
    free: int
    _proj: list = field(repr=False, default_factory=list)  # C_n -> kernel coordinates
    _P: list = field(repr=False, default_factory=list)
    _kernel: list = field(repr=False, default_factory=list)  # kernel basis as C_n vectors
    _gen_cols: list = field(repr=False, default_factory=list)
    _mods: list = field(repr=False, default_factory=list)  # modulus per generator (0 = free)
    _Pinv: list = field(repr=False, default_factory=list)

    def invariants(self) -> tuple:
        return (self.free, tuple(self.torsion))

    def coordinates(self, z: list) -> list:
        y = _matvec(self._P, _matvec(self._proj, z))
        return [y[c] % m if m else y[c] for c, m in zip(self._gen_cols, self._mods)]

    def generators(self) -> list:
        """Generating cycles as vectors over the basis of C_n."""
        out = []
        k = len(self._kernel)
        for c in self._gen_cols:
            coef = [self._Pinv[r][c] for r in range(k)]
            z = [0] * (len(self._kernel[0]) if self._kernel else 0)
            for r, a in enumerate(coef):
                if a:
                    z = [zi + a * ki for zi, ki in zip(z, self._kernel[r])]
            out.append(z)
        return out


def homology_groups(C: ChainComplex, cap: int) -> list:
    groups = []
    for n in range(cap + 1):
        cn = C.rank(n)
        if n == 0:
            sm = Smith([], None, None, _identity(cn), _identity(cn))
        else:
            sm = smith(C.dense_boundary(n), C.rank(n - 1), cn)
        r = sm.rank
        kernel = [[sm.Q[i][j] for i in range(cn)] for j in range(r, cn)]
        proj = [sm.Qinv[j] for j in range(r, cn)]
        k = cn - r
        ncols = C.rank(n + 1) if n + 1 <= C.top else 0
        if ncols:
            Dt = [list(col) for col in zip(*C.dense_boundary(n + 1))]
            Mk = [_matvec(Dt, row) for row in proj]
        if k == 0:
            groups.append(HomologyGroup(n, [], 0, proj, [], kernel, [], [], []))
            continue
        if ncols == 0:
            sm2 = Smith([], _identity(k), _identity(k), None, None)
        else:
            sm2 = smith(Mk, k, ncols)
        cols, mods, torsion = [], [], []
        for i, dv in enumerate(sm2.d):
            if dv > 1:
                cols.append(i)
                mods.append(dv)
                torsion.append(dv)
        free = k - sm2.rank
        for i in range(sm2.rank, k):
            cols.append(i)
            mods.append(0)
        groups.append(HomologyGroup(n, torsion, free, proj, sm2.P, kernel, cols, mods, sm2.Pinv))
    return groups


def _chain_map(f: SimplicialMap, CK: ChainComplex, CL: ChainComplex, n: int, z: list) -> list:
    out = [0] * CL.rank(n)
    for i, a in enumerate(z):
        if not a:
            continue
        y = f(f.source.simplex(CK.bases[n][i]))
        if not y.degenerate:
            out[CL.index[n][y.base]] += a
    return out


def _surjective(phi_cols: list, mods: list) -> bool:
    """Do the images phi_cols together with the relations of the target generate it?"""
    t = len(mods)
    if t == 0:
        return True
    cols = [list(c) for c in phi_cols]
    for i, m in enumerate(mods):
        if m:
            cols.append([m if r == i else 0 for r in range(t)])
    if not cols:
        return False
    M = [[c[r] for c in cols] for r in range(t)]
    d = smith(M, t, len(cols), track=False).d
    return len(d) == t and all(v == 1 for v in d)


def homology_iso_probe(f: SimplicialMap, cap: int, assume_complete: bool = False) -> Report:
    """Does f induce isomorphisms on integral homology in degrees 0..cap?

    NECESSARY CONDITION ONLY: agreement here never decides a weak equivalence.
    """
    K, L = f.source, f.target
    _check_range(K, cap, assume_complete)
    _check_range(L, cap, assume_complete)
    top = min(cap + 1, K.dim_cap, L.dim_cap)
    CK, CL = chain_complex(K, top), chain_complex(L, top)
    HK, HL = homology_groups(CK, cap), homology_groups(CL, cap)
    rep = Report("homology iso probe (necessary condition only)")
    rep.tick("dd=0 source", CK.check_dd().ok)
    rep.tick("dd=0 target", CL.check_dd().ok)
    for n in range(cap + 1):
        gk, gl = HK[n], HL[n]
        same = gk.invariants() == gl.invariants()
        rep.tick("same invariants", same, n, f"{gk.invariants()} vs {gl.invariants()}")
        phi = [gl.coordinates(_chain_map(f, CK, CL, n, z)) for z in gk.generators()]
        rep.tick("induced map onto", _surjective(phi, gl._mods), n)
    rep.notes.append("necessary condition only; weak equivalence is not decided")
    return rep
