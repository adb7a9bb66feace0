"""Finite-state letter-to-word transducers attached to a slow algorithm:
the canonical transducer of its graph, the commutator transducer on the
root fiber, the defect, the tail-property decision, and synchronizing
words.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .algebra import (F, ProjMatrix, conjugacy_of_periodic, eval_word,
                      min_rotation, mobius_apply, primitive_root)
from .algorithm import SlowAlgorithm
from .exact import QuadIrr
from .expansion import UPWord, attracting_fixed_point, orbit, tail_equivalent
from .graph import AlgGraph, OpFibration, SchreierGraph, build_graph, contains, flip, schreier_quotient


class StuckError(RuntimeError):
    """The transducer has no edge for the next input symbol."""

    def __init__(self, state, symbol):
        self.state = state
        self.symbol = symbol
        super().__init__(f"stuck in state {state!r} on symbol {symbol!r}")


class Transducer:
    """A deterministic letter-to-word transducer.

    edges[state][symbol] = (target, output word); absent entries make the
    run stop (StuckError).
    """

    __slots__ = ("states", "input_alphabet", "edges", "initial")

    def __init__(self, states, input_alphabet, edges, initial):
        object.__setattr__(self, "states", tuple(states))
        object.__setattr__(self, "input_alphabet", tuple(input_alphabet))
        object.__setattr__(self, "edges", {s: dict(e) for s, e in edges.items()})
        object.__setattr__(self, "initial", tuple(initial))

    def __setattr__(self, *args):
        raise AttributeError("Transducer is immutable")

    def walk(self, state, word) -> tuple[object, tuple]:
        """Read a finite word; return (end state, concatenated output)."""
        out: list = []
        for z in word:
            try:
                state, emitted = self.edges[state][z]
            except KeyError:
                raise StuckError(state, z) from None
            out.extend(emitted)
        return state, tuple(out)

    def run(self, start, inp):
        """Transduce a finite word (returns a tuple) or an ultimately
        periodic word (returns a UPWord, via cycle detection on
        (state, phase) pairs)."""
        if start not in self.edges:
            raise ValueError(f"unknown state {start!r}")
        if not isinstance(inp, UPWord):
            return self.walk(start, inp)[1]
        state, out = self.walk(start, inp.prefix)
        out = list(out)
        m = len(inp.period)
        seen: dict[tuple, tuple[int, int]] = {}
        t = 0
        while True:
            phase = t % m
            key = (state, phase)
            if key in seen:
                _, out_start = seen[key]
                if len(out) == out_start:
                    raise ValueError("no output on the eventual cycle")
                return UPWord(out[:out_start], out[out_start:])
            seen[key] = (t, len(out))
            z = inp.period[phase]
            try:
                state, emitted = self.edges[state][z]
            except KeyError:
                raise StuckError(state, z) from None
            out.extend(emitted)
            t += 1

    def restrict(self, keep) -> "Transducer":
        keep = set(keep)
        edges = {
            s: {z: (t, w) for z, (t, w) in self.edges[s].items() if t in keep}
            for s in self.states if s in keep
        }
        return Transducer([s for s in self.states if s in keep],
                          self.input_alphabet, edges,
                          [s for s in self.initial if s in keep])

    def reachable_from(self, start) -> list:
        seen = {start}
        queue = deque([start])
        while queue:
            s = queue.popleft()
            for t, _ in self.edges[s].values():
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return [s for s in self.states if s in seen]

    def is_complete(self) -> bool:
        return all(set(self.edges[s]) == set(self.input_alphabet) for s in self.states)

    def to_json(self) -> dict:
        return {
            "states": [str(s) for s in self.states],
            "input_alphabet": [str(z) for z in self.input_alphabet],
            "initial": [str(s) for s in self.initial],
            "edges": [
                {"from": str(s), "to": str(t), "in": str(z),
                 "out": "".join(str(o) for o in w)}
                for s in self.states
                for z, (t, w) in sorted(self.edges[s].items(), key=lambda kv: str(kv[0]))
            ],
        }


def gt_transducer(g: AlgGraph) -> Transducer:
    """The canonical transducer of the algorithm graph: drop the F-edges,
    let edges into the root pair announce their branch index, and read
    words over L, N starting from the root."""
    edges = {}
    for v in g.vertices:
        edges[v] = {}
        for z in ("L", "N"):
            t = g.target(v, z)
            a = g.emit.get((v, z))
            edges[v][z] = (t, (a,) if a is not None else ())
    return Transducer(g.vertices, ("L", "N"), edges, (g.root,))


def root_component(t: Transducer, root="1") -> Transducer:
    """The part of the transducer reachable from the root."""
    return t.restrict(t.reachable_from(root))


def build_ft(T: SlowAlgorithm, g: AlgGraph | None = None,
             phi: OpFibration | None = None) -> tuple[Transducer, Transducer]:
    """The commutator transducer on the root fiber and its pruned version.

    For states P and branch indices a, tracing the branch word through the
    graph from P emits the indices b_1..b_q of the completed primitive
    paths and ends in a fiber state Q; this encodes the relation
    P A_a = A_{b_1} ... A_{b_q} Q.  The pruned version drops the root state
    and every edge into it.
    """
    if g is None:
        g = build_graph(T)
    if phi is None:
        _, phi = schreier_quotient(g)
    states = list(phi.root_fiber)
    edges: dict = {s: {} for s in states}
    fiber = set(states)
    for p in states:
        for a in range(T.n):
            word = T.words[a] + ("F" if T.es[a] else "")
            q, out = g.walk(p, word)
            if q not in fiber:
                raise AssertionError(f"walk from {p} left the root fiber at {q}")
            edges[p][a] = (q, out)
    ft = Transducer(states, tuple(range(T.n)), edges, states)
    star_states = [s for s in states if s != g.root]
    star_edges = {
        s: {a: (q, w) for a, (q, w) in edges[s].items() if q != g.root}
        for s in star_states
    }
    ft_star = Transducer(star_states, tuple(range(T.n)), star_edges, star_states)
    return ft, ft_star


@dataclass(frozen=True)
class MarkedWord:
    """An L/N word with endpoint marks in {1, 2} recording on which side of
    the flip a primitive path starts and ends."""

    start: int
    word: str
    end: int

    def __post_init__(self):
        if self.start not in (1, 2) or self.end not in (1, 2):
            raise ValueError("marks must be 1 or 2")
        if any(ch not in "LN" for ch in self.word):
            raise ValueError("marked words are over L, N")

    def matrix(self) -> ProjMatrix:
        """The group element the marked word stands for: the plain product
        when read from the root side, with a flip applied per mark 2."""
        body = eval_word(self.word if self.start == 1 else flip(self.word))
        if self.start != self.end:
            body = body * F
        return body

    def __str__(self):
        return f"[{self.start}]{self.word}[{self.end}]"


@dataclass(frozen=True)
class BranchDefect:
    branch: int
    word: str
    vertices: tuple[str, ...]
    root_fiber_hits: int


@dataclass(frozen=True)
class DefectReport:
    branches: tuple[BranchDefect, ...]
    value: int

    def to_json(self) -> dict:
        return {
            "defect": self.value,
            "branches": [
                {"branch": b.branch, "word": b.word,
                 "vertices": list(b.vertices), "hits": b.root_fiber_hits}
                for b in self.branches
            ],
        }


def defect(T: SlowAlgorithm, g: AlgGraph | None = None,
           phi: OpFibration | None = None) -> DefectReport:
    """Maximum number of root-fiber vertices on a branch's pair of
    primitive paths (the path of its word from the root and the flipped
    path from the covertex)."""
    if g is None:
        g = build_graph(T)
    if phi is None:
        _, phi = schreier_quotient(g)
    fiber = set(phi.root_fiber)
    end_mark = {"1": 1, "2": 2}
    reports = []
    for a in range(T.n):
        word = T.words[a]
        verts = set()
        for start, w in ((g.root, word), (g.covertex, flip(word))):
            v = start
            verts.add(v)
            for z in w:
                v = g.target(v, z)
                verts.add(v)
            marked = MarkedWord(end_mark[start], w, end_mark[v])
            if marked.matrix() != T.branches[a]:
                raise AssertionError(f"path {marked} does not evaluate to branch {a}")
        if len(verts) != 2 * len(word):
            raise AssertionError(f"primitive path pair of branch {a} is degenerate")
        hits = len(verts & fiber)
        reports.append(BranchDefect(a, T.branch_word(a), tuple(sorted(verts)), hits))
    return DefectReport(tuple(reports), max(r.root_fiber_hits for r in reports))


# -- tail property ----------------------------------------------------------


@dataclass(frozen=True)
class SerretWitness:
    state: str
    state_matrix: ProjMatrix
    input_cycle: tuple[int, ...]
    output_cycle: tuple[int, ...]
    alpha: QuadIrr
    beta: QuadIrr
    orbit_alpha: UPWord
    orbit_beta: UPWord

    def to_json(self) -> dict:
        return {
            "state": self.state,
            "state_matrix": self.state_matrix.rows(),
            "input_cycle": list(self.input_cycle),
            "output_cycle": list(self.output_cycle),
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "orbit_alpha": str(self.orbit_alpha),
            "orbit_beta": str(self.orbit_beta),
        }


@dataclass(frozen=True)
class SerretVerdict:
    status: str                     # "holds" | "fails" | "undecided"
    certificate: str | None = None  # "trivial" | "acyclic" | "copy"
    witness: SerretWitness | None = None
    bound: int | None = None
    sampling: dict | None = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "certificate": self.certificate,
            "witness": self.witness.to_json() if self.witness else None,
            "bound": self.bound,
            "sampling": self.sampling,
        }


def _sccs(states, succ) -> list[set]:
    """Tarjan strongly connected components (iterative)."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    out = []
    counter = [0]

    for root in states:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def _try_witness(T: SlowAlgorithm, g: AlgGraph, quotient: SchreierGraph,
                 state, input_cycle, output_cycle) -> SerretWitness | None:
    """Verify a candidate failing cycle end to end before reporting it."""
    word_matrix = None
    for a in input_cycle:
        word_matrix = T.branches[a] if word_matrix is None else word_matrix * T.branches[a]
    alpha = attracting_fixed_point(word_matrix)
    if not isinstance(alpha, QuadIrr):
        return None
    res_a = orbit(T, alpha)
    if res_a.word != UPWord((), primitive_root(input_cycle)):
        return None
    p_mat = g.vertex_matrix(state)
    if not contains(quotient, p_mat):
        return None
    beta = mobius_apply(p_mat, alpha)
    if not isinstance(beta, QuadIrr) or beta.sign() <= 0:
        return None
    res_b = orbit(T, beta)
    if tail_equivalent(res_a.word, res_b.word):
        return None
    return SerretWitness(state, p_mat, tuple(input_cycle), tuple(output_cycle),
                         alpha, beta, res_a.word, res_b.word)


def serret_check(T: SlowAlgorithm, bound: int | None = None,
                 walk_budget: int = 200_000,
                 sample_runs: int = 200, sample_length: int = 64,
                 seed: int = 0) -> SerretVerdict:
    """Decide the tail property where possible.

    Layered: an empty pruned transducer, an acyclic one, or one whose
    strongly connected parts merely copy their input each certify that the
    property holds.  Otherwise closed walks up to the bound are searched
    for an input/output period mismatch, which (after independent
    reverification through exact orbits) refutes the property with an
    explicit pair of points.  If neither side is settled the verdict is
    undecided, with a sampling report on random inputs.
    """
    g = build_graph(T)
    quotient, phi = schreier_quotient(g)
    _, ft_star = build_ft(T, g, phi)
    if not ft_star.states:
        return SerretVerdict("holds", certificate="trivial")
    if bound is None:
        bound = 4 * len(ft_star.states)
    if bound < len(ft_star.states):
        raise ValueError("bound must be at least the number of states")

    sccs = _sccs(ft_star.states,
                 lambda s: (t for t, _ in ft_star.edges[s].values()))
    comp_of = {s: i for i, comp in enumerate(sccs) for s in comp}
    cyclic = set()
    for i, comp in enumerate(sccs):
        for s in comp:
            for t, _ in ft_star.edges[s].values():
                if comp_of[t] == i and (len(comp) > 1 or t == s):
                    cyclic.add(i)
    if not cyclic:
        return SerretVerdict("holds", certificate="acyclic", bound=bound)

    all_copy = True
    for s in ft_star.states:
        for a, (t, w) in ft_star.edges[s].items():
            if comp_of[t] == comp_of[s] and comp_of[s] in cyclic and w != (a,):
                all_copy = False
    if all_copy:
        return SerretVerdict("holds", certificate="copy", bound=bound)

    # refutation: bounded search over closed walks, shortest first
    examined = 0
    budget = walk_budget
    seen_classes = set()
    budget_hit = False
    for length in range(1, bound + 1):
        if budget_hit:
            break
        for start in ft_star.states:
            if budget_hit:
                break
            stack = [(start, (), ())]
            while stack:
                budget -= 1
                if budget < 0:
                    budget_hit = True
                    break
                state, ins, outs = stack.pop()
                if len(ins) == length:
                    if state != start:
                        continue
                    key = min_rotation(tuple(zip(_walk_states(ft_star, start, ins), ins)))
                    if key in seen_classes:
                        continue
                    seen_classes.add(key)
                    examined += 1
                    if not outs or not conjugacy_of_periodic(ins, outs):
                        witness = _try_witness(T, g, quotient, start, ins, outs)
                        if witness is not None:
                            return SerretVerdict("fails", witness=witness, bound=bound)
                    continue
                for a in sorted(ft_star.edges[state], reverse=True):
                    t, w = ft_star.edges[state][a]
                    stack.append((t, ins + (a,), outs + tuple(w)))

    rng = random.Random(seed)
    stopped = 0
    survived_consistent = 0
    for _ in range(sample_runs):
        state = rng.choice(ft_star.states)
        ins: list[int] = []
        outs: list[int] = []
        ok = True
        for _ in range(sample_length):
            a = rng.randrange(T.n)
            edge = ft_star.edges[state].get(a)
            if edge is None:
                stopped += 1
                ok = False
                break
            state, w = edge
            ins.append(a)
            outs.extend(w)
        if ok and outs and tuple(ins[-8:]) == tuple(outs[-8:]):
            survived_consistent += 1
    sampling = {
        "runs": sample_runs,
        "length": sample_length,
        "stopped": stopped,
        "survived_tail_consistent": survived_consistent,
        "walks_examined": examined,
        "budget_exhausted": budget_hit,
    }
    return SerretVerdict("undecided", bound=bound, sampling=sampling)


def _walk_states(t: Transducer, start, word):
    states = []
    s = start
    for z in word:
        states.append(s)
        s = t.edges[s][z][0]
    return tuple(states)


# -- synchronizing words ----------------------------------------------------


@dataclass(frozen=True)
class SyncResult:
    synchronizing: bool
    word: tuple | None
    pair_graph_size: int
    states: int

    def to_json(self) -> dict:
        return {
            "synchronizing": self.synchronizing,
            "word": "".join(str(z) for z in self.word) if self.word is not None else None,
            "pair_graph_size": self.pair_graph_size,
            "states": self.states,
        }


def sync_check(t: Transducer, exact_limit: int = 12) -> SyncResult:
    """Synchronizing-word check for a complete deterministic automaton
    (outputs are ignored): every unordered state pair must reach a
    singleton in the pair automaton.  If so, a synchronizing word is built
    by greedy pair merging, and replaced by an exact shortest one (subset
    BFS) when the automaton is small."""
    if not t.is_complete():
        raise ValueError("synchronization needs a complete automaton")
    states = list(t.states)
    k = len(states)
    idx = {s: i for i, s in enumerate(states)}
    delta = {z: [idx[t.edges[s][z][0]] for s in states] for z in t.input_alphabet}
    pairs = [(i, j) for i in range(k) for j in range(i, k)]
    pair_graph_size = len(pairs)
    if k == 1:
        return SyncResult(True, (), pair_graph_size, k)

    def pair_step(p, z):
        u, v = delta[z][p[0]], delta[z][p[1]]
        return (u, v) if u <= v else (v, u)

    # backward BFS from singletons gives, for every pair, a letter on a
    # shortest path to a merge
    dist = {(i, i): 0 for i in range(k)}
    letter_to_merge = {}
    queue = deque(dist)
    preds: dict[tuple, list] = {}
    for p in pairs:
        for z in t.input_alphabet:
            preds.setdefault(pair_step(p, z), []).append((p, z))
    while queue:
        q = queue.popleft()
        for p, z in preds.get(q, ()):
            if p not in dist:
                dist[p] = dist[q] + 1
                letter_to_merge[p] = z
                queue.append(p)
    if len(dist) < pair_graph_size:
        return SyncResult(False, None, pair_graph_size, k)

    current = frozenset(range(k))
    word: list = []
    while len(current) > 1:
        it = iter(sorted(current))
        p = (next(it), next(it))
        while p[0] != p[1]:
            z = letter_to_merge[p]
            word.append(z)
            current = frozenset(delta[z][i] for i in current)
            p = pair_step(p, z)
    result = tuple(word)

    if k <= exact_limit:
        start = frozenset(range(k))
        seen = {start: ()}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            if len(cur) == 1:
                result = seen[cur]
                break
            for z in t.input_alphabet:
                nxt = frozenset(delta[z][i] for i in cur)
                if nxt not in seen:
                    seen[nxt] = seen[cur] + (z,)
                    queue.append(nxt)
    return SyncResult(True, result, pair_graph_size, k)


def sync_sample(t: Transducer, n_words: int, length: int, seed: int = 0) -> dict:
    """Fraction of random input words that never collapse the full state
    set to a single state; with a synchronizing automaton this fraction
    should vanish quickly in the word length."""
    if not t.is_complete():
        raise ValueError("sampling needs a complete automaton")
    rng = random.Random(seed)
    states = list(t.states)
    idx = {s: i for i, s in enumerate(states)}
    delta = {z: [idx[t.edges[s][z][0]] for s in states] for z in t.input_alphabet}
    alphabet = list(t.input_alphabet)
    avoided = 0
    for _ in range(n_words):
        current = frozenset(range(len(states)))
        collapsed = False
        for _ in range(length):
            z = rng.choice(alphabet)
            current = frozenset(delta[z][i] for i in current)
            if len(current) == 1:
                collapsed = True
                break
        if not collapsed:
            avoided += 1
    return {
        "words": n_words,
        "length": length,
        "avoided_reset": avoided,
        "fraction": avoided / n_words,
    }
