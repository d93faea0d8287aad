"""Class cohesion measures: the four LCOM variants, Briand's Coh,
Bieman-Kang TCC/LCC, and Jaccard similarity cohesion.

All of them look at the same raw material: for each non-constructor
method m of a class, I(m) is the set of attributes declared in that class
which m accesses.  Static attributes count; inherited ones do not.
"""

from __future__ import annotations

from .errors import UndefinedMetric
from .model import ClassInfo


def method_attribute_sets(info: ClassInfo) -> list[tuple[str, frozenset[str]]]:
    """(method signature, accessed own-attribute names), constructors and
    initializer blocks excluded."""
    own = {a.name for a in info.attributes}
    out = []
    for m in info.regular_methods:
        touched = frozenset(
            attr for owner, attr in m.accessed_attributes if owner == info.name and attr in own
        )
        out.append((m.signature, touched))
    return out


def _call_pairs(info: ClassInfo) -> set[tuple[int, int]]:
    """Index pairs (i, j) of regular methods where one invokes the other."""
    methods = info.regular_methods
    index_by_name: dict[str, list[int]] = {}
    for i, m in enumerate(methods):
        index_by_name.setdefault(m.name, []).append(i)
    pairs: set[tuple[int, int]] = set()
    for i, m in enumerate(methods):
        for inv in m.invocations:
            if inv.target_class != info.name:
                continue
            for j in index_by_name.get(inv.method_name, ()):
                if i != j:
                    pairs.add((min(i, j), max(i, j)))
    return pairs


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def components(self) -> int:
        return len({self.find(i) for i in range(len(self.parent))})


def lcom(info: ClassInfo, variant: str = "CK") -> int | float:
    """Lack of cohesion of methods.

    CK: max(P - Q, 0) over attribute-disjoint vs attribute-sharing pairs.
    LH: connected components over attribute-share edges.
    HM: components over attribute-share plus intra-class call edges.
    HS: (m - mean attribute usage) / (m - 1), Henderson-Sellers form.
    """
    sets = method_attribute_sets(info)
    m = len(sets)
    if variant in ("CK", "LH", "HM") and m < 1:
        raise UndefinedMetric(f"LCOM-{variant}", "class has no methods")

    if variant == "CK":
        p = q = 0
        for i in range(m):
            for j in range(i + 1, m):
                if sets[i][1] & sets[j][1]:
                    q += 1
                else:
                    p += 1
        return max(p - q, 0)

    if variant in ("LH", "HM"):
        uf = _UnionFind(m)
        for i in range(m):
            for j in range(i + 1, m):
                if sets[i][1] & sets[j][1]:
                    uf.union(i, j)
        if variant == "HM":
            for i, j in _call_pairs(info):
                uf.union(i, j)
        return uf.components()

    if variant == "HS":
        a = len(info.attributes)
        if m < 2:
            raise UndefinedMetric("LCOM-HS", "needs at least 2 methods")
        if a < 1:
            raise UndefinedMetric("LCOM-HS", "needs at least 1 attribute")
        usage = sum(_access_count(sets, attr.name) for attr in info.attributes)
        return (m - usage / a) / (m - 1)

    raise UndefinedMetric(f"LCOM-{variant}", "unknown variant")


def _access_count(sets: list[tuple[str, frozenset[str]]], attr: str) -> int:
    return sum(1 for _, touched in sets if attr in touched)


def coh(info: ClassInfo) -> float:
    """Briand et al.: sum of per-attribute access counts over m*a."""
    sets = method_attribute_sets(info)
    m = len(sets)
    a = len(info.attributes)
    if m < 1 or a < 1:
        raise UndefinedMetric("Coh", "needs methods and attributes")
    usage = sum(_access_count(sets, attr.name) for attr in info.attributes)
    return usage / (m * a)


def tcc_lcc(info: ClassInfo) -> tuple[float, float]:
    """Tight/loose class cohesion: directly / transitively attribute-connected
    method pairs over all pairs."""
    sets = method_attribute_sets(info)
    m = len(sets)
    if m < 2:
        raise UndefinedMetric("TCC/LCC", "needs at least 2 methods")
    total_pairs = m * (m - 1) // 2
    direct = 0
    uf = _UnionFind(m)
    for i in range(m):
        for j in range(i + 1, m):
            if sets[i][1] & sets[j][1]:
                direct += 1
                uf.union(i, j)
    transitive = 0
    for i in range(m):
        for j in range(i + 1, m):
            if uf.find(i) == uf.find(j):
                transitive += 1
    return direct / total_pairs, transitive / total_pairs


def similarity_cohesion(info: ClassInfo) -> float:
    """Mean pairwise Jaccard similarity of attribute sets; disjoint-empty
    pairs contribute 0."""
    sets = method_attribute_sets(info)
    m = len(sets)
    if m < 2:
        raise UndefinedMetric("similarity cohesion", "needs at least 2 methods")
    total = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            union = sets[i][1] | sets[j][1]
            if union:
                total += len(sets[i][1] & sets[j][1]) / len(union)
    return total / (m * (m - 1) / 2)
