"""Resolution of plane curve singularities by quadratic transformations.

The tree of infinitely near points stores one representative per set of
Galois-conjugate points: a node with ``weight`` e stands for e conjugate
points over its parent's field.  Branches are read off the leaves, with a
power-series parametrization rebuilt by composing the blowup substitutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import gf, upoly
from .curve import (
    PlaneCurve,
    ProjPoint,
    TangentDirection,
    factor_binary_form,
    local_equation,
    orbit,
)
from .errors import NotAtOrigin, PointNotOnCurve, ResolutionDepthExceeded
from .mpoly import MultiPoly, translate

DEFAULT_DEPTH_CAP = 32


@dataclass
class TreeNode:
    """An infinitely near point with local equation ``local`` at the origin."""

    m: int
    local: MultiPoly
    weight: int = 1
    chart: str | None = None
    root: int = 0
    children: list["TreeNode"] = field(default_factory=list)

    @property
    def field(self) -> gf.FieldSpec:
        return self.local.field

    def walk(self, mult: int = 1, path: tuple = ()):
        """Yield (node, total conjugate count, path of nodes from the root)."""
        total = mult * self.weight
        here = path + (self,)
        yield self, total, here
        for ch in self.children:
            yield from ch.walk(total, here)


@dataclass
class InfinitelyNearTree:
    center: ProjPoint
    chart: str
    root: TreeNode
    base: gf.FieldSpec

    def nodes(self):
        return self.root.walk()

    def leaves(self):
        return [(n, tot, path) for n, tot, path in self.root.walk() if not n.children]

    def depth(self) -> int:
        return max(len(path) for _, _, path in self.root.walk())


@dataclass
class BranchInfo:
    center: ProjPoint
    j1: int
    s: int | None
    linear: bool
    tame: bool
    rational: bool
    param_x: list[int]
    param_y: list[int]
    field: gf.FieldSpec
    level: int

    @property
    def truncation(self) -> int:
        return len(self.param_x)


@dataclass
class SingularPointReport:
    point: ProjPoint
    m: int
    delta: int
    ordinary: bool
    tangent_directions: list[TangentDirection]
    branches: list[BranchInfo]
    orbit_size: int
    tree: InfinitelyNearTree | None = None

    @property
    def level(self) -> int:
        return self.point.level


# --- blowups ------------------------------------------------------------------------------------

@dataclass
class ExceptionalPoint:
    chart: str
    root: int
    weight: int
    local: MultiPoly


def _chart_a(f: MultiPoly, m: int) -> MultiPoly:
    return MultiPoly(f.field, 2, {(i + j - m, j): c for (i, j), c in f.terms.items()})


def _chart_b(f: MultiPoly, m: int) -> MultiPoly:
    return MultiPoly(f.field, 2, {(i, i + j - m): c for (i, j), c in f.terms.items()})


def blowup_once(f: MultiPoly, m: int | None = None) -> list[ExceptionalPoint]:
    """Points of the strict transform on the exceptional line, one per conjugate set.

    Chart A (x, xy): one point per irreducible factor of T(1, t), T the
    lowest form, at its smallest root over the factor's residue field.
    Chart B (xy, y) contributes only its origin, when the direction x = 0
    is tangent (no y^m term in T).
    """
    K = f.field
    if f.coefficient((0, 0)) or not f:
        raise NotAtOrigin("local equation does not vanish at the origin")
    order = int(f.order())
    if m is None:
        m = order
    if m != order:
        raise ValueError(f"stated multiplicity {m} differs from the order {order}")
    fa = _chart_a(f, m)
    t_poly = upoly.trim([fa.coefficient((0, j)) for j in range(m + 1)])
    out = []
    for phi, _ in upoly.factor(K, t_poly):
        e = len(phi) - 1
        E = gf.extension(K, e)
        emb = gf.embed(K, E)
        c = min(upoly.roots(E, [emb.map_code(v) for v in phi]))
        local = translate(fa.lift(E), 0, c)
        out.append(ExceptionalPoint("A", c, e, local))
    if f.coefficient((0, m)) == 0:
        out.append(ExceptionalPoint("B", 0, 1, _chart_b(f, m)))
    return out


def resolve_local(f: MultiPoly, depth_cap: int = DEFAULT_DEPTH_CAP) -> TreeNode:
    if not f or f.coefficient((0, 0)):
        raise NotAtOrigin("local equation does not vanish at the origin")
    root = TreeNode(int(f.order()), f)
    stack = [(root, 0)]
    while stack:
        node, depth = stack.pop()
        if node.m <= 1:
            continue
        if depth >= depth_cap:
            raise ResolutionDepthExceeded(f"more than {depth_cap} blowups")
        for ep in blowup_once(node.local, node.m):
            child = TreeNode(int(ep.local.order()), ep.local, ep.weight, ep.chart, ep.root)
            node.children.append(child)
            stack.append((child, depth + 1))
    return root


def resolve_point(C: PlaneCurve, P: ProjPoint, depth_cap: int = DEFAULT_DEPTH_CAP) -> InfinitelyNearTree:
    f = local_equation(C, P)
    if not f or f.coefficient((0, 0)):
        raise PointNotOnCurve(f"{P} is not on the curve")
    from .curve import choose_chart

    return InfinitelyNearTree(P, choose_chart(P), resolve_local(f, depth_cap), C.base)


def delta_invariant(tree: InfinitelyNearTree | TreeNode) -> int:
    root = tree.root if isinstance(tree, InfinitelyNearTree) else tree
    return sum(total * n.m * (n.m - 1) // 2 for n, total, _ in root.walk())


def branch_count(tree: InfinitelyNearTree) -> int:
    return sum(total for _, total, _ in tree.leaves())


# --- power series -------------------------------------------------------------------------------------

def _smul(K, a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y:
                    out[i + j] = K.add(out[i + j], K.mul(x, y))
    return out


def _sadd(K, a, b):
    return [K.add(x, y) for x, y in zip(a, b)]


def _sinv(K, a, n):
    """Inverse of a unit power series."""
    inv0 = K.inv(a[0])
    out = [0] * n
    out[0] = inv0
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i] and out[k - i]:
                acc = K.add(acc, K.mul(a[i], out[k - i]))
        out[k] = K.neg(K.mul(acc, inv0))
    return out


def _eval_series(g: MultiPoly, X, Y, n):
    """g(X(t), Y(t)) truncated to n terms."""
    K = g.field
    by_j: dict[int, list] = {}
    for (i, j), c in g.terms.items():
        by_j.setdefault(j, []).append((i, c))
    xp = {0: [1] + [0] * (n - 1)}

    def xpow(i):
        if i not in xp:
            xp[i] = _smul(K, xpow(i - 1), X, n)
        return xp[i]

    acc = [0] * n
    for j in range(max(by_j) if by_j else 0, -1, -1):
        acc = _smul(K, acc, Y, n)
        for i, c in by_j.get(j, ()):
            acc = _sadd(K, acc, [K.mul(c, v) for v in xpow(i)])
    return acc


def smooth_parametrization(g: MultiPoly, n: int):
    """(X, Y) with g(X, Y) = 0 mod t^n for g smooth at the origin."""
    K = g.field
    t = [0, 1] + [0] * (n - 2) if n >= 2 else [0] * n
    gy = g.derivative(1)
    solve_y = gy.coefficient((0, 0)) != 0
    if not solve_y:
        g = MultiPoly(K, 2, {(j, i): c for (i, j), c in g.terms.items()})
        gy = g.derivative(1)
    Y = [0] * n
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        G = _eval_series(g, t, Y, prec)
        D = _eval_series(gy, t, Y, prec)
        corr = _smul(K, G, _sinv(K, D, prec), prec)
        Y = [K.sub(Y[i], corr[i]) if i < prec else 0 for i in range(n)]
    return (t, Y) if solve_y else (Y, t)


def _order(series):
    return next((i for i, c in enumerate(series) if c), None)


def _frob_series(K, series, qq):
    return [K.frob_q(c, qq) for c in series]


def _leaf_series(path, n):
    """Compose the blowup substitutions from a leaf back to the root coordinates."""
    leaf = path[-1]
    X, Y = smooth_parametrization(leaf.local, n)
    K = leaf.field
    for node in reversed(path[1:]):
        if node.field is not K:
            raise AssertionError("leaf field is not the largest on its path")
        if node.chart == "A":
            # parent (x, y) = (u, u (v + c)), c lifted into the leaf field
            c = _lift(node, K)
            vc = list(Y)
            vc[0] = K.add(vc[0], c)
            X, Y = X, _smul(K, X, vc, n)
        else:
            X, Y = _smul(K, X, Y, n), Y
    return X, Y


def _lift(node, K):
    """The chart-A root of ``node`` mapped into K (roots live in node.field)."""
    if node.field is K:
        return node.root
    return gf.embed(node.field, K).map_code(node.root)


def _normalize_fields(root: TreeNode):
    """Return paths whose nodes all carry equations over the leaf field."""
    out = []
    for leaf, total, path in root.walk():
        if leaf.children:
            continue
        K = leaf.field
        lifted = []
        for node in path:
            if node.field is K:
                lifted.append(node)
            else:
                emb = gf.embed(node.field, K)
                lifted.append(TreeNode(node.m, node.local.map_field(emb), node.weight,
                                       node.chart, emb.map_code(node.root)))
        out.append((leaf, total, lifted))
    return out


def branches_from_tree(tree: InfinitelyNearTree, d: int) -> list[BranchInfo]:
    P = tree.center
    base = tree.base
    rational_center = P.level == 1
    out = []
    n0 = 2 * d + 4
    for leaf, total, path in _normalize_fields(tree.root):
        conj_free = all(node.weight == 1 for node in path)
        K = leaf.field
        n = n0
        while True:
            X, Y = _leaf_series(path, n)
            ox, oy = _order(X), _order(Y)
            j1 = min(o for o in (ox, oy) if o is not None) if (ox is not None or oy is not None) else None
            if j1 is None:
                n *= 2
                continue
            other = oy if ox == j1 else ox
            if other is None and not _axis_component(tree.root.local, 1 if ox == j1 else 0) and n < 64 * n0:
                n *= 2
                continue
            break
        s_val = other if other is not None else None
        if ox is not None and oy is not None and ox == oy:
            s_val = j1
        p = base.p
        info = BranchInfo(P, j1, s_val, j1 == 1, j1 % p != 0, rational_center and conj_free,
                          X, Y, K, K.s // base.s)
        out.append(info)
        # conjugates over the point's field
        qq = P.field.q
        k_rel = total
        Xc, Yc = X, Y
        for _ in range(k_rel - 1):
            Xc, Yc = _frob_series(K, Xc, qq), _frob_series(K, Yc, qq)
            out.append(BranchInfo(P, j1, s_val, j1 == 1, j1 % p != 0, False, Xc, Yc, K, info.level))
    return out


def _axis_component(f: MultiPoly, var: int) -> bool:
    """True if the coordinate axis {var = 0} is a component of f (var divides f)."""
    return all(e[var] >= 1 for e in f.terms)


def branches_at(C: PlaneCurve, P: ProjPoint) -> list[BranchInfo]:
    return branches_from_tree(resolve_point(C, P), C.d)


def point_report(C: PlaneCurve, P: ProjPoint, depth_cap: int = DEFAULT_DEPTH_CAP) -> SingularPointReport:
    tree = resolve_point(C, P, depth_cap)
    m = tree.root.m
    directions = factor_binary_form(tree.root.local.homogeneous_part(m), C.base) if m >= 2 else []
    distinct = sum(1 for t in directions if t.multiplicity == 1) == m and len(directions) == m
    branches = branches_from_tree(tree, C.d)
    return SingularPointReport(
        point=P,
        m=m,
        delta=delta_invariant(tree),
        ordinary=distinct,
        tangent_directions=directions,
        branches=branches,
        orbit_size=len(orbit(P, C.base)),
        tree=tree,
    )


def series_substitution_ok(f: MultiPoly, b: BranchInfo) -> bool:
    """f(x(t), y(t)) = 0 mod t^truncation, with f the local equation at the center."""
    g = f.lift(b.field)
    n = b.truncation
    return not any(_eval_series(g, b.param_x, b.param_y, n))


# --- global counts -------------------------------------------------------------------------------------

def B_q(MqS: int, reports: list[SingularPointReport]) -> int:
    return MqS + sum(len(r.branches) for r in reports if r.point.level == 1)


def N1(MqS: int, reports: list[SingularPointReport]) -> int:
    return MqS + sum(sum(1 for b in r.branches if b.rational) for r in reports if r.point.level == 1)


# --- DOT export ------------------------------------------------------------------------------------------

def to_dot(tree: InfinitelyNearTree, name: str = "P") -> str:
    base = tree.base
    lines = [f'digraph "{name}" {{', f'  label="{tree.center}";']
    ids = {}
    for i, (node, total, path) in enumerate(tree.root.walk()):
        ids[id(node)] = f"n{i}"
        level = node.field.s // base.s
        lines.append(f'  n{i} [label="m={node.m} level={level} x{total}"];')
        if len(path) > 1:
            lines.append(f"  {ids[id(path[-2])]} -> n{i} [label=\"{node.chart}\"];")
    lines.append("}")
    return "\n".join(lines)
