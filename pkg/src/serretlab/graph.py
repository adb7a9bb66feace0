"""The labelled graph of a slow algorithm, its quotient Schreier graph, and
subgroup queries.

The graph lives on two copies of the finite binary tree of left factors of
the branch words: an upper copy named by the factor ("1" at the root) and a
lower copy carrying an F suffix ("2" for the root's twin).  Leaves are glued
to "1" or "2" according to the orientation of their branch, after which
every vertex has exactly one outgoing L-, N- and F-edge.  Folding the graph
until every label is also injective on targets yields the Schreier graph of
the group generated by the branches, together with the vertex map of the
quotient; that map is an opfibration (outgoing edges lift).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (F, IDENTITY, GenWord, ProjMatrix, eval_word,
                      generic_factor)
from .algorithm import SlowAlgorithm

LABELS = ("L", "N", "F")

_FLIP = str.maketrans("LN", "NL")


def flip(word: str) -> str:
    """Exchange L and N letterwise (conjugation by F on monoid words)."""
    return word.translate(_FLIP)


class AlgGraph:
    """The glued double-tree graph of an algorithm.

    Vertices are names: "1", "2", and left-factor words "L", "LN", ... with
    an "F" suffix on the lower copy.  edges[v][Z] is the target of the
    Z-edge at v; emit[(v, Z)] is the branch index announced by a leaf edge
    (edges into {"1", "2"}), absent for tree edges.
    """

    __slots__ = ("algorithm", "vertices", "edges", "emit")

    root = "1"
    covertex = "2"

    def __init__(self, algorithm, vertices, edges, emit):
        object.__setattr__(self, "algorithm", algorithm)
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "emit", emit)

    def __setattr__(self, *args):
        raise AttributeError("AlgGraph is immutable")

    def target(self, v: str, Z: str) -> str:
        return self.edges[v][Z]

    def vertex_matrix(self, v: str) -> ProjMatrix:
        """The group element a vertex stands for."""
        if v == "1":
            return IDENTITY
        if v == "2":
            return F
        return eval_word(v)

    def walk(self, start: str, word: str) -> tuple[str, tuple[int, ...]]:
        """Follow letters of a word over L, N, F; collect leaf emissions."""
        v = start
        out = []
        for Z in word:
            nxt = self.edges[v][Z]
            a = self.emit.get((v, Z))
            if a is not None:
                out.append(a)
            v = nxt
        return v, tuple(out)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"from": v, "to": self.edges[v][Z], "label": Z}
                for v in self.vertices for Z in LABELS
            ],
            "root": self.root,
        }


def _sorted_vertices(names):
    ups = sorted((n for n in names if not n.endswith("F") and n != "2"),
                 key=lambda w: (w != "1", len(w), w))
    downs = sorted((n for n in names if n.endswith("F") or n == "2"),
                   key=lambda w: (w != "2", len(w), w))
    return ups + downs


def build_graph(T: SlowAlgorithm) -> AlgGraph:
    """Construct the algorithm's graph on the left factors of its branch
    words, with leaves glued to the root pair."""
    leaf_of = {w: a for a, w in enumerate(T.words)}
    proper = {w[:k] for w in T.words for k in range(len(w))} - set(T.words)

    def upper_name(word: str) -> str:
        return word if word else "1"

    def lower_name(word: str) -> str:
        return word + "F" if word else "2"

    names = [upper_name(w) for w in proper] + [lower_name(w) for w in proper]
    edges: dict[str, dict[str, str]] = {}
    emit: dict[tuple[str, str], int] = {}

    for w in proper:
        up, down = upper_name(w), lower_name(w)
        edges[up] = {"F": down}
        edges[down] = {"F": up}
        for Z in "LN":
            child = w + Z
            if child not in leaf_of and child not in proper:
                raise AssertionError(f"factor tree is not full below {w!r}")
            if child in leaf_of:
                a = leaf_of[child]
                e = T.es[a]
                edges[up][Z] = "1" if e == 0 else "2"
                emit[(up, Z)] = a
            else:
                edges[up][Z] = upper_name(child)
            # from the lower copy the Z-edge runs to (w + Z')F, because
            # conjugation by F exchanges L and N
            child_flip = w + ("N" if Z == "L" else "L")
            if child_flip in leaf_of:
                a = leaf_of[child_flip]
                e = T.es[a]
                edges[down][Z] = "2" if e == 0 else "1"
                emit[(down, Z)] = a
            else:
                edges[down][Z] = lower_name(child_flip)

    return AlgGraph(T, _sorted_vertices(names), edges, emit)


class SchreierGraph:
    """Vertices 0..n-1 (0 the root coset) with each label acting as a
    permutation; perms[Z][v] is the target of the Z-edge at v."""

    __slots__ = ("n", "perms", "_inv")

    root = 0

    def __init__(self, n: int, perms: dict[str, tuple[int, ...]]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "perms", {Z: tuple(p) for Z, p in perms.items()})
        inv = {}
        for Z, p in self.perms.items():
            if sorted(p) != list(range(n)):
                raise ValueError(f"label {Z} does not act as a permutation")
            q = [0] * n
            for src, dst in enumerate(p):
                q[dst] = src
            inv[Z] = tuple(q)
        object.__setattr__(self, "_inv", inv)

    def __setattr__(self, *args):
        raise AttributeError("SchreierGraph is immutable")

    @property
    def index(self) -> int:
        return self.n

    _EXPAND = {"S": ("N", "L'", "N"), "R": ("L", "N'"), "R'": ("N", "L'")}

    def step(self, v: int, letter: str) -> int:
        for x in self._EXPAND.get(letter, (letter,)):
            v = self._inv[x[0]][v] if x.endswith("'") else self.perms[x][v]
        return v

    def walk(self, word: GenWord | str, start: int = 0) -> int:
        v = start
        for letter in (word if not isinstance(word, str) else GenWord.parse(word)):
            v = self.step(v, letter)
        return v

    def __eq__(self, other):
        if not isinstance(other, SchreierGraph):
            return NotImplemented
        return self.n == other.n and self.perms == other.perms

    def __hash__(self):
        return hash((self.n, tuple(sorted((Z, p) for Z, p in self.perms.items()))))

    def __repr__(self):
        return f"SchreierGraph(n={self.n}, perms={self.perms})"

    def to_json(self) -> dict:
        return {
            "vertices": list(range(self.n)),
            "edges": [
                {"from": v, "to": self.perms[Z][v], "label": Z}
                for v in range(self.n) for Z in LABELS
            ],
            "root": 0,
        }


@dataclass(frozen=True)
class OpFibration:
    """The quotient map from an algorithm graph onto its Schreier graph."""

    source: AlgGraph
    target: SchreierGraph
    vertex_map: dict

    def __call__(self, v: str) -> int:
        return self.vertex_map[v]

    def fiber(self, k: int) -> tuple[str, ...]:
        return tuple(v for v in self.source.vertices if self.vertex_map[v] == k)

    @property
    def root_fiber(self) -> tuple[str, ...]:
        return self.fiber(self.target.root)

    def check(self) -> None:
        """Assert the defining properties: root goes to root, edges commute,
        and every outgoing edge downstairs lifts (automatic here since both
        graphs are complete and deterministic)."""
        if self.vertex_map[self.source.root] != self.target.root:
            raise AssertionError("root is not preserved")
        for v in self.source.vertices:
            for Z in LABELS:
                down = self.target.perms[Z][self.vertex_map[v]]
                up = self.vertex_map[self.source.target(v, Z)]
                if down != up:
                    raise AssertionError(f"edge {v} --{Z}--> does not commute")

    def to_json(self) -> dict:
        data = self.target.to_json()
        data["phi"] = {v: self.vertex_map[v] for v in self.source.vertices}
        return data


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


# defining relations of the ambient group, rewritten over L, N, F via
# s = NL'N, r = LN': s^2, r^3, fsf = s, frf = r^2 (f^2 holds by construction)
_RELATORS = (
    ("N", "L'", "N", "N", "L'", "N"),
    ("L", "N'", "L", "N'", "L", "N'"),
    ("F", "N", "L'", "N", "F", "N'", "L", "N'"),
    ("F", "L", "N'", "F", "N", "L'", "N", "L'"),
)


def schreier_quotient(g: AlgGraph) -> tuple[SchreierGraph, OpFibration]:
    """Fold the graph until every label acts bijectively: repeatedly merge
    the two sources of equally labelled edges into a common target (group
    cancellation) and the two targets of equally labelled edges out of a
    merged class (well-definedness).  Folding can stabilize on a graph
    whose label action does not factor through the ambient group, so the
    defining relations are enforced as well: a relator walk that fails to
    close forces one more merge.  The result is the Schreier graph of the
    branch group, with the class map as opfibration."""
    uf = _UnionFind(g.vertices)
    while True:
        changed = True
        while changed:
            changed = False
            classes: dict[str, list[str]] = {}
            for v in g.vertices:
                classes.setdefault(uf.find(v), []).append(v)
            for members in classes.values():
                for Z in LABELS:
                    targets = {uf.find(g.target(v, Z)) for v in members}
                    first = None
                    for t in targets:
                        if first is None:
                            first = t
                        else:
                            changed |= uf.union(first, t)
            incoming: dict[tuple[str, str], set[str]] = {}
            for v in g.vertices:
                for Z in LABELS:
                    incoming.setdefault((uf.find(g.target(v, Z)), Z), set()).add(uf.find(v))
            for sources in incoming.values():
                first = None
                for s in sources:
                    if first is None:
                        first = s
                    else:
                        changed |= uf.union(first, s)

        # folding is stable, so every label acts as a permutation of the
        # classes and relator walks are well-defined
        fwd = {}
        for v in g.vertices:
            for Z in LABELS:
                fwd[(uf.find(v), Z)] = uf.find(g.target(v, Z))
        bwd = {(t, Z): s for (s, Z), t in fwd.items()}
        glued = False
        reps = {uf.find(v) for v in g.vertices}
        for rep in reps:
            for relator in _RELATORS:
                cur = rep
                for letter in relator:
                    if letter.endswith("'"):
                        cur = bwd[(cur, letter[0])]
                    else:
                        cur = fwd[(cur, letter)]
                if cur != rep:
                    uf.union(rep, cur)
                    glued = True
        if not glued:
            break

    # canonical numbering: breadth first from the root over L < N < F
    rep_target = {}
    for v in g.vertices:
        for Z in LABELS:
            rep_target[(uf.find(v), Z)] = uf.find(g.target(v, Z))
    number = {uf.find(g.root): 0}
    queue = [uf.find(g.root)]
    while queue:
        cur = queue.pop(0)
        for Z in LABELS:
            t = rep_target[(cur, Z)]
            if t not in number:
                number[t] = len(number)
                queue.append(t)
    n = len(number)
    perms = {Z: [0] * n for Z in LABELS}
    for rep, k in number.items():
        for Z in LABELS:
            perms[Z][k] = number[rep_target[(rep, Z)]]
    sch = SchreierGraph(n, perms)
    phi = OpFibration(g, sch, {v: number[uf.find(v)] for v in g.vertices})
    return sch, phi


def contains(s: SchreierGraph, m: ProjMatrix) -> bool:
    """Membership of m in the branch group, by walking any factorization of
    m from the root coset."""
    return s.walk(generic_factor(m)) == s.root


# fixed test elements: S R S = N'L and its two F-twisted companions
SRS = eval_word("N'L")
SRSF = eval_word("N'LF")
SR2SF = eval_word("SRRSF")


@dataclass(frozen=True)
class Fingerprint:
    """Group-level summary of an algorithm: subgroup index, whether the
    branch group sits inside the orientation-preserving half, which of the
    three forced elements it contains, and (when every branch is
    orientation preserving) which of the two possible groups it is."""

    index: int
    in_gamma: bool
    has_srs: bool
    has_srsf: bool
    has_sr2sf: bool
    parity_class: str | None

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "in_gamma": self.in_gamma,
            "contains": {
                "SRS": self.has_srs, "SRSF": self.has_srsf, "SR2SF": self.has_sr2sf,
            },
            "class": self.parity_class,
        }


def fingerprint(T: SlowAlgorithm, quotient: SchreierGraph | None = None) -> Fingerprint:
    if quotient is None:
        quotient, _ = schreier_quotient(build_graph(T))
    in_gamma = all(e == 0 for e in T.es)
    parity = None
    if in_gamma:
        parity = "Gamma" if any(len(w) % 2 for w in T.words) else "R_SRS"
    return Fingerprint(
        index=quotient.index,
        in_gamma=in_gamma,
        has_srs=contains(quotient, SRS),
        has_srsf=contains(quotient, SRSF),
        has_sr2sf=contains(quotient, SR2SF),
        parity_class=parity,
    )


_STYLE = {"L": "dashed", "N": "solid", "F": "dotted"}


def export_dot(g: AlgGraph | SchreierGraph, name: str = "G") -> str:
    """Deterministic DOT text; L-edges dashed, N-edges solid, F-edges dotted
    and drawn once per twin pair."""
    if isinstance(g, AlgGraph):
        vertices = list(g.vertices)
        label = dict(zip(vertices, vertices))
        out = {v: {Z: g.target(v, Z) for Z in LABELS} for v in vertices}
    else:
        vertices = list(range(g.n))
        label = {v: str(v) for v in vertices}
        out = {v: {Z: g.perms[Z][v] for Z in LABELS} for v in vertices}
    lines = [f"digraph {name} {{"]
    for v in vertices:
        lines.append(f'  "{label[v]}";')
    drawn_f = set()
    for v in vertices:
        for Z in LABELS:
            t = out[v][Z]
            if Z == "F":
                pair = frozenset((v, t))
                if pair in drawn_f:
                    continue
                drawn_f.add(pair)
                lines.append(
                    f'  "{label[v]}" -> "{label[t]}" '
                    f'[label="F", style=dotted, dir=none];')
            else:
                lines.append(
                    f'  "{label[v]}" -> "{label[t]}" '
                    f'[label="{Z}", style={_STYLE[Z]}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
