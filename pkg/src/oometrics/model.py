"""Language-neutral structural model of an analyzed system.

The model is built from "facts": per-class records in the facts-file JSON
schema (see README).  The source parser produces the same records, so a
model can be built from parsed source, from a facts file written by this
tool, or from a facts file written by an external front end for another
language.

A built model is immutable and safe to share between metric computations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .cfg import ControlFlowGraph
from .errors import DuplicateClass, InheritanceCycle, UnknownClass

PRIMITIVE_TYPES = {
    "void", "int", "long", "short", "byte", "char", "boolean", "float", "double", "var",
}

VISIBILITIES = ("public", "protected", "private", "default")

CONSTRUCTOR_NAME = "<init>"
INITIALIZER_PREFIX = "<init-block"


@dataclass(frozen=True)
class AttributeInfo:
    name: str
    declared_type: str = ""
    visibility: str = "default"
    is_static: bool = False


@dataclass(frozen=True)
class Invocation:
    """One static invocation edge: target class, target method spec
    ("name" or "name(sig)"), and how many call sites hit it."""

    target_class: str
    target_method: str
    count: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("invocation multiplicity must be >= 1")

    @property
    def method_name(self) -> str:
        return self.target_method.split("(", 1)[0]


@dataclass(frozen=True)
class MethodInfo:
    name: str
    parameter_types: tuple[str, ...] = ()
    visibility: str = "default"
    is_abstract: bool = False
    is_static: bool = False
    accessed_attributes: tuple[tuple[str, str], ...] = ()  # (class, attribute)
    invocations: tuple[Invocation, ...] = ()
    cfg: ControlFlowGraph | None = None
    is_inherited_copy: bool = False
    line_count: int | None = None

    @property
    def signature(self) -> str:
        return f"{self.name}({','.join(self.parameter_types)})"

    @property
    def is_constructor(self) -> bool:
        return self.name == CONSTRUCTOR_NAME

    @property
    def is_initializer(self) -> bool:
        return self.name.startswith(INITIALIZER_PREFIX)


@dataclass(frozen=True)
class ClassInfo:
    name: str
    kind: str = "class"  # class | interface | abstract-class
    superclasses: tuple[str, ...] = ()
    methods: tuple[MethodInfo, ...] = ()
    attributes: tuple[AttributeInfo, ...] = ()
    line_count: int = 0
    comment_lines: int = 0
    statement_count: int = 0
    is_external: bool = False
    external_depth: int = 0

    def __post_init__(self):
        if self.comment_lines > self.line_count:
            raise ValueError(f"{self.name}: comment_lines exceeds line_count")
        sigs = [m.signature for m in self.methods]
        if len(sigs) != len(set(sigs)):
            raise ValueError(f"{self.name}: duplicate method signature")
        attr_names = [a.name for a in self.attributes]
        if len(attr_names) != len(set(attr_names)):
            raise ValueError(f"{self.name}: duplicate attribute name")

    @property
    def regular_methods(self) -> tuple[MethodInfo, ...]:
        """Declared methods without constructors and initializer blocks."""
        return tuple(m for m in self.methods if not m.is_constructor and not m.is_initializer)

    @property
    def constructors(self) -> tuple[MethodInfo, ...]:
        return tuple(m for m in self.methods if m.is_constructor)

    @property
    def member_functions(self) -> tuple[MethodInfo, ...]:
        """Methods plus constructors (initializer blocks excluded)."""
        return tuple(m for m in self.methods if not m.is_initializer)


@dataclass(frozen=True)
class AncestorChain:
    """Resolvable transitive superclasses, nearest first.  External parents
    are excluded from ``names``; the deepest declared depth of an external
    parent encountered along any chain lands in ``external_depth``."""

    names: tuple[str, ...]
    external_depth: int = 0

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.names)

    def __contains__(self, item):
        return item in self.names


class SystemModel:
    """Immutable graph of classes and their relations.

    Construct via :func:`build_system_model`; direct instantiation skips
    reference resolution.
    """

    def __init__(self, classes: dict[str, ClassInfo], baseline_id: str | None = None):
        self._classes = dict(classes)
        self.baseline_id = baseline_id
        self._children: dict[str, tuple[str, ...]] = {}
        kids: dict[str, list[str]] = {name: [] for name in self._classes}
        for info in self._classes.values():
            for sup in info.superclasses:
                if sup in kids:
                    kids[sup].append(info.name)
        self._children = {name: tuple(sorted(v)) for name, v in kids.items()}
        self._ancestor_cache: dict[str, AncestorChain] = {}
        self._used_cache: dict[str, frozenset[str]] = {}
        self._users_cache: dict[str, frozenset[str]] | None = None

    # -- basic access --------------------------------------------------------

    def __contains__(self, name: str) -> bool:
        return name in self._classes

    def __len__(self) -> int:
        return len(self._classes)

    def get(self, name: str) -> ClassInfo:
        try:
            return self._classes[name]
        except KeyError:
            raise UnknownClass(name) from None

    @property
    def class_names(self) -> tuple[str, ...]:
        return tuple(sorted(self._classes))

    @property
    def classes(self) -> tuple[ClassInfo, ...]:
        return tuple(self._classes[n] for n in self.class_names)

    @property
    def internal_class_names(self) -> tuple[str, ...]:
        return tuple(n for n in self.class_names if not self._classes[n].is_external)

    @property
    def internal_classes(self) -> tuple[ClassInfo, ...]:
        return tuple(c for c in self.classes if not c.is_external)

    @property
    def total_classes(self) -> int:
        """TC: system classes only, external stubs excluded."""
        return len(self.internal_class_names)

    # -- inheritance ---------------------------------------------------------

    def children(self, name: str) -> tuple[str, ...]:
        self.get(name)
        return self._children.get(name, ())

    def descendants(self, name: str) -> frozenset[str]:
        self.get(name)
        seen: set[str] = set()
        todo = list(self._children.get(name, ()))
        while todo:
            cur = todo.pop()
            if cur not in seen:
                seen.add(cur)
                todo.extend(self._children.get(cur, ()))
        return frozenset(seen)

    def ancestors(self, name: str) -> AncestorChain:
        """Transitive resolvable superclasses of ``name``, nearest first."""
        if name in self._ancestor_cache:
            return self._ancestor_cache[name]
        info = self.get(name)
        names: list[str] = []
        seen = {name}
        ext_depth = 0
        layer = list(info.superclasses)
        while layer:
            nxt: list[str] = []
            for sup in layer:
                if sup in seen or sup not in self._classes:
                    continue
                sup_info = self._classes[sup]
                if sup_info.is_external:
                    ext_depth = max(ext_depth, sup_info.external_depth)
                    seen.add(sup)
                    continue
                seen.add(sup)
                names.append(sup)
                nxt.extend(sup_info.superclasses)
            layer = nxt
        chain = AncestorChain(tuple(names), ext_depth)
        self._ancestor_cache[name] = chain
        return chain

    def inheritance_depth(self, name: str) -> int:
        """Longest superclass path length; unresolved/external parents
        contribute their declared external depth instead of an edge."""
        memo: dict[str, int] = {}

        def depth(c: str) -> int:
            if c in memo:
                return memo[c]
            best = 0
            for sup in self._classes[c].superclasses:
                sup_info = self._classes.get(sup)
                if sup_info is None:
                    continue
                if sup_info.is_external:
                    best = max(best, sup_info.external_depth)
                else:
                    best = max(best, 1 + depth(sup))
            memo[c] = best
            return best

        self.get(name)
        return depth(name)

    # -- the uses relation -----------------------------------------------------

    def used_classes(self, name: str) -> frozenset[str]:
        """All classes ``name`` uses: invocation targets, accessed-attribute
        owners, attribute types, parameter types.  Externals included;
        callers filter.  Plain ``extends`` is not use."""
        if name in self._used_cache:
            return self._used_cache[name]
        info = self.get(name)
        out: set[str] = set()
        for attr in info.attributes:
            if attr.declared_type in self._classes:
                out.add(attr.declared_type)
        for m in info.methods:
            for p in m.parameter_types:
                if p in self._classes:
                    out.add(p)
            for inv in m.invocations:
                if inv.target_class in self._classes:
                    out.add(inv.target_class)
            for owner, _ in m.accessed_attributes:
                if owner in self._classes:
                    out.add(owner)
        out.discard(name)
        result = frozenset(out)
        self._used_cache[name] = result
        return result

    def user_classes(self, name: str) -> frozenset[str]:
        self.get(name)
        if self._users_cache is None:
            users: dict[str, set[str]] = {n: set() for n in self._classes}
            for c in self._classes:
                for d in self.used_classes(c):
                    users[d].add(c)
            self._users_cache = {n: frozenset(v) for n, v in users.items()}
        return self._users_cache[name]

    def uses(self, c: str, d: str) -> bool:
        """Directional: c invokes a method of d, accesses an attribute of d,
        or declares an attribute/parameter of type d."""
        self.get(d)
        if c == d:
            raise ValueError("uses() requires two distinct classes")
        return d in self.used_classes(c)

    # -- derived member views --------------------------------------------------

    def inherited_methods(self, name: str) -> tuple[MethodInfo, ...]:
        """Methods ``name`` inherits: non-private, non-static regular methods
        of ancestors, nearest definition first, overridden ones excluded."""
        info = self.get(name)
        own = {m.signature for m in info.regular_methods}
        collected: dict[str, MethodInfo] = {}
        for anc in self.ancestors(name):
            for m in self._classes[anc].regular_methods:
                sig = m.signature
                if m.visibility == "private" or m.is_static:
                    continue
                if sig in own or sig in collected:
                    continue
                collected[sig] = replace(m, is_inherited_copy=True)
        return tuple(collected.values())

    def inherited_attributes(self, name: str) -> tuple[AttributeInfo, ...]:
        info = self.get(name)
        own = {a.name for a in info.attributes}
        collected: dict[str, AttributeInfo] = {}
        for anc in self.ancestors(name):
            for a in self._classes[anc].attributes:
                if a.visibility == "private" or a.name in own or a.name in collected:
                    continue
                collected[a.name] = a
        return tuple(collected.values())


# ---------------------------------------------------------------------------
# Building a model from facts records
# ---------------------------------------------------------------------------


def _parse_member_ref(ref: str) -> tuple[str, str]:
    """Split "Class.member" / "pkg.Class.member" at the last dot."""
    cls, _, member = ref.rpartition(".")
    if not cls:
        return "", ref
    return cls, member


class _Resolver:
    def __init__(self, declared: dict[str, dict]):
        self.declared = declared
        simple: dict[str, list[str]] = {}
        for qual in declared:
            simple.setdefault(qual.rsplit(".", 1)[-1], []).append(qual)
        self.simple = simple
        self.externals: set[str] = set()

    def resolve(self, ref: str) -> str | None:
        """Qualified match, unique simple-name match, else external stub."""
        ref = ref.strip()
        if not ref or ref in PRIMITIVE_TYPES:
            return None
        if ref in self.declared:
            return ref
        candidates = self.simple.get(ref.rsplit(".", 1)[-1], [])
        if len(candidates) == 1:
            return candidates[0]
        self.externals.add(ref)
        return ref


def build_system_model(class_records, baseline_id: str | None = None) -> SystemModel:
    """Assemble and resolve a SystemModel from facts-schema class records.

    Raises DuplicateClass for colliding names and InheritanceCycle when the
    resolved inheritance relation is cyclic.
    """
    records = list(class_records)
    declared: dict[str, dict] = {}
    for rec in records:
        name = rec["name"]
        if name in declared:
            raise DuplicateClass(name)
        declared[name] = rec

    resolver = _Resolver(declared)
    classes: dict[str, ClassInfo] = {}

    for name, rec in declared.items():
        supers = []
        for sup in rec.get("extends", ()):
            resolved = resolver.resolve(sup)
            if resolved is not None:
                supers.append(resolved)  # self-references surface as a cycle below

        attrs = []
        for a in rec.get("attributes", ()):
            attrs.append(
                AttributeInfo(
                    name=a["name"],
                    declared_type=resolver.resolve(a.get("type", "")) or a.get("type", ""),
                    visibility=a.get("visibility", "default"),
                    is_static=bool(a.get("static", False)),
                )
            )

        methods = []
        for m in rec.get("methods", ()):
            accesses: set[tuple[str, str]] = set()
            for ref in m.get("accesses", ()):
                cls_ref, attr = _parse_member_ref(ref)
                owner = resolver.resolve(cls_ref) if cls_ref else name
                if owner is not None:
                    accesses.add((owner, attr))
            merged: dict[tuple[str, str], int] = {}
            for inv in m.get("invokes", ()):
                target = inv["target"]
                spec = ""
                if "(" in target:
                    target, _, spec = target.partition("(")
                    spec = "(" + spec
                cls_ref, meth = _parse_member_ref(target)
                owner = resolver.resolve(cls_ref) if cls_ref else name
                if owner is None:
                    continue
                key = (owner, meth + spec)
                merged[key] = merged.get(key, 0) + int(inv.get("count", 1))
            invokes = [Invocation(c, m_, n) for (c, m_), n in sorted(merged.items())]
            cfg = None
            if m.get("cfg") is not None:
                cfg = ControlFlowGraph.from_facts(m["cfg"])
            methods.append(
                MethodInfo(
                    name=m["name"],
                    parameter_types=tuple(
                        resolver.resolve(p) or p for p in m.get("paramTypes", ())
                    ),
                    visibility=m.get("visibility", "default"),
                    is_abstract=bool(m.get("abstract", False)),
                    is_static=bool(m.get("static", False)),
                    accessed_attributes=tuple(sorted(accesses)),
                    invocations=tuple(invokes),
                    cfg=cfg,
                    line_count=m.get("lines"),
                )
            )

        statements = rec.get("statements")
        if statements is None:
            statements = sum(m.cfg.statement_node_count() for m in methods if m.cfg is not None)

        classes[name] = ClassInfo(
            name=name,
            kind=rec.get("kind", "class"),
            superclasses=tuple(supers),
            methods=tuple(methods),
            attributes=tuple(attrs),
            line_count=int(rec.get("lines", 0)),
            comment_lines=int(rec.get("commentLines", 0)),
            statement_count=int(statements),
        )

    for ext in sorted(resolver.externals):
        if ext not in classes:
            classes[ext] = ClassInfo(name=ext, is_external=True)

    _check_acyclic(classes)
    return SystemModel(classes, baseline_id=baseline_id)


def _check_acyclic(classes: dict[str, ClassInfo]) -> None:
    WHITE, GREY, BLACK = 0, 1, 2
    color = {name: WHITE for name in classes}

    def visit(name: str, trail: list[str]) -> None:
        color[name] = GREY
        trail.append(name)
        for sup in classes[name].superclasses:
            if sup not in classes or classes[sup].is_external:
                continue
            if color[sup] == GREY:
                cycle = trail[trail.index(sup):] + [sup]
                raise InheritanceCycle(cycle)
            if color[sup] == WHITE:
                visit(sup, trail)
        trail.pop()
        color[name] = BLACK

    for name in classes:
        if color[name] == WHITE and not classes[name].is_external:
            visit(name, [])


# ---------------------------------------------------------------------------
# Facts-file serialization
# ---------------------------------------------------------------------------


def class_to_record(info: ClassInfo) -> dict:
    rec: dict = {
        "name": info.name,
        "kind": info.kind,
        "extends": list(info.superclasses),
        "lines": info.line_count,
        "commentLines": info.comment_lines,
        "statements": info.statement_count,
        "attributes": [
            {
                "name": a.name,
                "type": a.declared_type,
                "visibility": a.visibility,
                "static": a.is_static,
            }
            for a in info.attributes
        ],
        "methods": [],
    }
    for m in info.methods:
        mrec: dict = {
            "name": m.name,
            "paramTypes": list(m.parameter_types),
            "visibility": m.visibility,
            "abstract": m.is_abstract,
            "static": m.is_static,
            "accesses": sorted(f"{owner}.{attr}" for owner, attr in set(m.accessed_attributes)),
            "invokes": [
                {"target": f"{inv.target_class}.{inv.target_method}", "count": inv.count}
                for inv in sorted(
                    m.invocations, key=lambda i: (i.target_class, i.target_method)
                )
            ],
        }
        if m.cfg is not None:
            mrec["cfg"] = m.cfg.to_facts()
        if m.line_count is not None:
            mrec["lines"] = m.line_count
        rec["methods"].append(mrec)
    return rec


def model_to_facts(model: SystemModel) -> dict:
    """Serialize the system classes (stubs are reconstructed on load)."""
    return {"classes": [class_to_record(c) for c in model.internal_classes]}


def facts_to_model(doc: dict, baseline_id: str | None = None) -> SystemModel:
    return build_system_model(doc.get("classes", []), baseline_id=baseline_id)


def load_facts(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_facts(doc: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
