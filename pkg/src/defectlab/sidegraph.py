"""The graph of special factors of length n joined by n-simple paths.

Vertices are reversal classes ``{w, reversal(w)}`` of left or right special
factors of length ``n``.  One left-to-right sweep over the occurrences of
special factors yields, for each consecutive pair, a path word whose only
special length-``n`` factors are its prefix and suffix.  Edges are reversal
classes of path words; two distinct edge classes between the same vertices
form a multi-edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexity import FactorIndex
from .words import as_text


def _cls(f: str) -> str:
    r = f[::-1]
    return f if f <= r else r


@dataclass(frozen=True)
class ReversalClass:
    representative: str
    is_palindromic_class: bool


@dataclass(frozen=True)
class SimplePath:
    path_word: str  # class representative of (e, reversal(e))
    start_class: ReversalClass
    end_class: ReversalClass
    is_loop: bool
    is_palindrome: bool


@dataclass
class SideGraph:
    n: int
    vertices: list[ReversalClass]
    edges: list[SimplePath]
    multiplicity: dict[str, int] = field(default_factory=dict)
    empty: bool = False
    saturated: bool = True

    @property
    def verdict_tree(self) -> bool:
        return lemma_tree_verdict(self)[0]

    @property
    def verdict_palindromic_loops(self) -> bool:
        return lemma_tree_verdict(self)[1]

    def to_json(self) -> dict:
        tree, loops = lemma_tree_verdict(self)
        return {
            "n": self.n,
            "vertices": [v.representative for v in self.vertices],
            "edges": [
                {"path": e.path_word, "from": e.start_class.representative,
                 "to": e.end_class.representative, "loop": e.is_loop,
                 "palindrome": e.is_palindrome, "count": self.multiplicity[e.path_word]}
                for e in self.edges
            ],
            "empty": self.empty,
            "saturated": self.saturated,
            "tree": tree,
            "palindromic_loops": loops,
        }

    def to_dot(self) -> str:
        lines = [f'graph G{self.n} {{']
        ids = {v.representative: f"v{i}" for i, v in enumerate(self.vertices)}
        for v in self.vertices:
            shape = "doublecircle" if v.is_palindromic_class else "circle"
            lines.append(f'  {ids[v.representative]} [label="{v.representative}", shape={shape}];')
        for e in self.edges:
            a, b = ids[e.start_class.representative], ids[e.end_class.representative]
            style = "dashed" if e.is_loop else "solid"
            color = "black" if e.is_palindrome else "red"
            lines.append(f'  {a} -- {b} [label="{e.path_word}", style={style}, color={color}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_sidegraph(w, n: int, index: FactorIndex | None = None) -> SideGraph:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s = as_text(w)
    index = index or FactorIndex(s)
    table = index.level(n)
    special = {f for f, st in table.items() if len(st.left) >= 2 or len(st.right) >= 2}
    classes = {}
    for f in special:
        c = _cls(f)
        classes[c] = ReversalClass(c, c == c[::-1])
    vertices = [classes[c] for c in sorted(classes)]
    if not special:
        return SideGraph(n, [], [], {}, empty=True, saturated=True)
    positions = [i for i in range(len(s) - n + 1) if s[i : i + n] in special]
    half = len(s) // 2
    edges: dict[str, SimplePath] = {}
    mult: dict[str, int] = {}
    early: set[str] = set()
    for i, j in zip(positions, positions[1:]):
        e = s[i : j + n]
        key = _cls(e)
        if key not in edges:
            a, b = classes[_cls(e[:n])], classes[_cls(e[-n:])]
            if b.representative < a.representative:
                a, b = b, a
            edges[key] = SimplePath(key, a, b, a == b, e == e[::-1])
            mult[key] = 0
        mult[key] += 1
        if j + n <= half:
            early.add(key)
    early_vertices = {_cls(s[i : i + n]) for i in positions if i + n <= half}
    saturated = early == set(edges) and early_vertices == set(classes)
    ordered = [edges[k] for k in sorted(edges)]
    return SideGraph(n, vertices, ordered, mult, empty=False, saturated=saturated)


def lemma_tree_verdict(g: SideGraph) -> tuple[bool, bool]:
    """(tree after removing loops, every loop path is a palindrome)."""
    loops_ok = all(e.is_palindrome for e in g.edges if e.is_loop)
    if not g.vertices:
        return True, loops_ok
    parent = {v.representative: v.representative for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    proper = [e for e in g.edges if not e.is_loop]
    acyclic = True
    for e in proper:
        a, b = find(e.start_class.representative), find(e.end_class.representative)
        if a == b:
            acyclic = False
        else:
            parent[a] = b
    roots = {find(v.representative) for v in g.vertices}
    tree = acyclic and len(roots) == 1 and len(proper) == len(g.vertices) - 1
    return tree, loops_ok
