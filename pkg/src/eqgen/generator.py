"""Paired syntax-tree growth driven by a :class:`HexStream`.

Two trees are grown at once. Every open non-terminal belongs to a link
group; a group is expanded once and the expansion is copied to each of its
occurrences. Structural rules give both trees the same production, semantic
rules give one tree a law's long form and the other its short form.

Digit consumption order, per frontier group at depth ``l < m``:

* ``c1``: semantic step iff ``c1 < p_r``
* ``c2``: roulette pick of the rule (law within the rotation category for a
  semantic step, one of the five structural rules otherwise)
* composite laws only: one digit for the companion law
* ``swap_sides`` only: one digit deciding which tree gets the long form

Groups at depth ``>= m`` become literals without reading digits. Once the
frontier is empty, each literal group reads one digit to pick its name.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field, fields
from fractions import Fraction

from eqgen import lawbook
from eqgen.lawbook import ROTATION, Category, GenRule, RuleKind
from eqgen.proposition import DEFAULT_POOL, FALSE, TRUE, Prop, Variable, walk
from eqgen.seedstream import DEFAULT_STRIDE, HexStream, derive

MAX_ATTEMPTS = 8
TREE1, TREE2 = 1, 2


class RetryExhausted(RuntimeError):
    """Every attempt produced fewer semantic steps than ``min_laws``."""


@dataclass(frozen=True)
class GenParams:
    p0: Fraction = Fraction(1, 4)
    p_c: Fraction = Fraction(1, 8)
    m: int = 5
    stride: int = DEFAULT_STRIDE
    # keyed by structural rule name (r_lit, r_and, ...) or law name
    weights: Mapping[str, Fraction] = field(default_factory=dict)
    variable_pool: tuple[str, ...] = DEFAULT_POOL
    swap_sides: bool = False
    min_laws: int = 1
    literal_constant_prob: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("p0", "p_c", "literal_constant_prob"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        object.__setattr__(self, "variable_pool", tuple(self.variable_pool))
        object.__setattr__(
            self, "weights", {k: Fraction(v) for k, v in dict(self.weights).items()}
        )
        self.validate()

    def validate(self) -> None:
        if not 0 <= self.p0 <= 1:
            raise ValueError(f"p0 must lie in [0, 1], got {self.p0}")
        if self.p_c <= 0:
            raise ValueError(f"p_c must be positive, got {self.p_c}")
        if self.stride < 1 or self.stride % 2 == 0:
            raise ValueError(f"stride must be a positive odd number, got {self.stride}")
        if self.m < 0:
            raise ValueError(f"m must be nonnegative, got {self.m}")
        if self.min_laws < 0:
            raise ValueError(f"min_laws must be nonnegative, got {self.min_laws}")
        if not 0 <= self.literal_constant_prob <= 1:
            raise ValueError("literal_constant_prob must lie in [0, 1]")
        if not self.variable_pool:
            raise ValueError("variable_pool must not be empty")
        for name in self.variable_pool:
            Variable(name)
        known = {r.name for r in lawbook.structural_rules()} | {x.name for x in lawbook.catalog()}
        for name, w in self.weights.items():
            if name not in known:
                raise ValueError(f"weight given for unknown rule {name!r}")
            if w < 0:
                raise ValueError(f"weight for {name} must be nonnegative")
        if sum(r.weight for r in lawbook.structural_rules(self.weights)) <= 0:
            raise ValueError("structural rule weights sum to zero")
        if all(self.category_weight(c) == 0 for c in Category):
            raise ValueError("every law has weight zero")

    def weight(self, name: str) -> Fraction:
        return self.weights.get(name, Fraction(1))

    def category_weight(self, category: Category) -> Fraction:
        return sum((self.weight(x.name) for x in lawbook.by_category(category)), Fraction(0))

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, Fraction):
                value = str(value)
            elif f.name == "weights":
                value = {k: str(v) for k, v in sorted(value.items())}
            elif f.name == "variable_pool":
                value = list(value)
            out[f.name] = value
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> GenParams:
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        kwargs = dict(data)
        for key in ("p0", "p_c", "literal_constant_prob"):
            if key in kwargs:
                kwargs[key] = Fraction(kwargs[key])
        if "weights" in kwargs:
            kwargs["weights"] = {k: Fraction(v) for k, v in kwargs["weights"].items()}
        return cls(**kwargs)


def roulette(weights: Sequence[Fraction], c: Fraction) -> int:
    """Index whose cumulative-weight slot contains ``c`` (a fraction in [0, 1))."""
    total = sum(weights, Fraction(0))
    if total <= 0:
        raise ValueError("roulette over zero total weight")
    target = c * total
    acc = Fraction(0)
    last = 0
    for i, w in enumerate(weights):
        if w <= 0:
            continue
        acc += w
        last = i
        if target < acc:
            return i
    return last


class Slot(Prop):
    """Open non-terminal inside a rule template, naming its link group."""

    __slots__ = ("group",)

    def __init__(self, group: int):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "_hash", hash(("E", group)))

    def __eq__(self, other):
        return type(other) is Slot and other.group == self.group

    __hash__ = Prop.__hash__

    def __repr__(self):
        return f"E{self.group}"


@dataclass(frozen=True)
class LogEntry:
    rule: str
    group: int
    depth: int
    kind: RuleKind | None  # None for the literal rule forced by the depth cap
    laws: tuple[str, ...] = ()
    category: Category | None = None

    @property
    def semantic(self) -> bool:
        return self.kind is RuleKind.SEMANTIC


@dataclass
class PairedDerivation:
    """Two partial trees sharing link groups; group 0 is the root of both."""

    p_r: Fraction
    rotation: int = 0
    groups: dict[int, set[int]] = field(default_factory=lambda: {0: {TREE1, TREE2}})
    depth: dict[int, int] = field(default_factory=lambda: {0: 0})
    expansion: dict[int, dict[int, Prop]] = field(default_factory=dict)
    literal_groups: list[int] = field(default_factory=list)
    literal_values: dict[int, Prop] = field(default_factory=dict)
    frontier: list[int] = field(default_factory=lambda: [0])
    log: list[LogEntry] = field(default_factory=list)

    def _fresh(self) -> int:
        return len(self.groups)

    def apply(
        self,
        group: int,
        rule: GenRule,
        long_side: int = TREE1,
        category: Category | None = None,
        forced: bool = False,
    ) -> list[int]:
        """Expand ``group`` with ``rule`` and return its new child groups in frontier order."""
        if group in self.expansion:
            raise ValueError(f"group {group} is already expanded")
        sides = self.groups[group]
        d = self.depth[group]
        entry_kind = None if forced else rule.kind
        if rule.is_literal:
            self.expansion[group] = {s: None for s in sides}
            self.literal_groups.append(group)
            self.log.append(LogEntry(rule.name, group, d, entry_kind))
            return []

        names: dict[str, int] = {}

        def instantiate(schema: Prop, side: int) -> Prop:
            if isinstance(schema, Variable):
                if schema.name not in names:
                    names[schema.name] = self._fresh()
                    self.groups[names[schema.name]] = set()
                    self.depth[names[schema.name]] = d + 1
                self.groups[names[schema.name]].add(side)
                return Slot(names[schema.name])
            kids = schema.children()
            if not kids:
                return schema
            return schema.with_children(tuple(instantiate(k, side) for k in kids))

        if rule.kind is RuleKind.STRUCTURAL:
            templates = {s: instantiate(rule.tree1, s) for s in sorted(sides)}
        elif len(sides) == 2:
            templates = {
                long_side: instantiate(rule.tree1, long_side),
                3 - long_side: instantiate(rule.tree2, 3 - long_side),
            }
        else:
            # group lives in one tree only: every occurrence gets the long form
            templates = {s: instantiate(rule.tree1, s) for s in sides}
        self.expansion[group] = templates
        self.log.append(LogEntry(rule.name, group, d, entry_kind, rule.laws, category))

        ordered: list[int] = []
        for side in (TREE1, TREE2):
            if side in templates:
                for node in walk(templates[side]):
                    if isinstance(node, Slot) and node.group not in ordered:
                        ordered.append(node.group)
        return ordered

    @property
    def semantic_count(self) -> int:
        return sum(1 for e in self.log if e.semantic)

    def resolve(self, side: int, group: int = 0) -> Prop:
        """Fully expanded subtree of ``group`` in tree ``side``."""
        memo: dict[int, Prop] = {}

        def build(g: int) -> Prop:
            if g in memo:
                return memo[g]
            if g in self.literal_values:
                result = self.literal_values[g]
            else:
                try:
                    template = self.expansion[g][side]
                except KeyError:
                    raise ValueError(f"group {g} is open or absent from tree {side}") from None
                result = fill(template)
            memo[g] = result
            return result

        def fill(node: Prop) -> Prop:
            if isinstance(node, Slot):
                return build(node.group)
            kids = node.children()
            if not kids:
                return node
            return node.with_children(tuple(fill(k) for k in kids))

        return build(group)

    def occurrences(self) -> dict[tuple[int, int], list[Prop]]:
        """Every occurrence of every group in the final trees, keyed by (group, side)."""
        found: dict[tuple[int, int], list[Prop]] = {}

        def visit(g: int, side: int) -> Prop:
            if g in self.literal_values:
                sub = self.literal_values[g]
            else:
                sub = fill(self.expansion[g][side], side)
            found.setdefault((g, side), []).append(sub)
            return sub

        def fill(node: Prop, side: int) -> Prop:
            if isinstance(node, Slot):
                return visit(node.group, side)
            kids = node.children()
            if not kids:
                return node
            return node.with_children(tuple(fill(k, side) for k in kids))

        visit(0, TREE1)
        visit(0, TREE2)
        return found


@dataclass(frozen=True)
class Question:
    lhs: Prop
    rhs: Prop
    laws_used: tuple[str, ...]
    seed_info: str = ""
    question_index: int = 0


def _next_category(params: GenParams, rotation: int) -> tuple[Category, int]:
    # categories whose laws all weigh zero are skipped
    for k in range(len(ROTATION)):
        cat = ROTATION[(rotation + k) % len(ROTATION)]
        if params.category_weight(cat) > 0:
            return cat, (rotation + k + 1) % len(ROTATION)
    raise ValueError("every law has weight zero")


def _semantic_step(stream: HexStream, params: GenParams, der: PairedDerivation) -> tuple[GenRule, Category]:
    category, der.rotation = _next_category(params, der.rotation)
    laws = lawbook.by_category(category)
    chosen = laws[roulette([params.weight(x.name) for x in laws], stream.next_fraction())]
    companion = None
    if chosen.name in lawbook.COMPOSITE_LAWS:
        options = lawbook.companions(chosen.name)
        companion = options[roulette([Fraction(1)] * len(options), stream.next_fraction())]
    return lawbook.semantic_rule(chosen, companion), category


def grow(stream: HexStream, params: GenParams) -> PairedDerivation:
    """One derivation attempt, reading digits from ``stream``."""
    structural = lawbook.structural_rules(params.weights)
    literal_rule = structural[0]
    der = PairedDerivation(p_r=params.p0)
    while der.frontier:
        g = der.frontier.pop()
        if der.depth[g] >= params.m:
            children = der.apply(g, literal_rule, forced=True)
        elif stream.next_fraction() < der.p_r:
            rule, category = _semantic_step(stream, params, der)
            long_side = TREE1
            if params.swap_sides and stream.next_hex() >= 8:
                long_side = TREE2
            children = der.apply(g, rule, long_side, category=category)
            der.p_r = params.p0
        else:
            rule = structural[roulette([r.weight for r in structural], stream.next_fraction())]
            children = der.apply(g, rule)
            der.p_r += params.p_c
        der.frontier.extend(reversed(children))
    _name_literals(stream, params, der)
    return der


def _name_literals(stream: HexStream, params: GenParams, der: PairedDerivation) -> None:
    pool = params.variable_pool
    for g in der.literal_groups:
        if params.literal_constant_prob > 0 and stream.next_fraction() < params.literal_constant_prob:
            der.literal_values[g] = TRUE if stream.next_hex() % 2 == 0 else FALSE
        else:
            der.literal_values[g] = Variable(pool[stream.next_hex() % len(pool)])


def generate_pair(
    stream: HexStream, params: GenParams | None = None, seed_info: str = "", index: int = 0
) -> Question:
    """Grow derivations until one applies at least ``min_laws`` laws.

    With ``m = 0`` no law can ever fire, so the requirement is waived and the
    result is a single shared literal.
    """
    from eqgen.analyze import equivalent

    params = params or GenParams()
    required = params.min_laws if params.m > 0 else 0
    for _ in range(MAX_ATTEMPTS):
        der = grow(stream, params)
        if der.semantic_count >= required:
            break
    else:
        raise RetryExhausted(
            f"{MAX_ATTEMPTS} derivations in a row applied fewer than {required} laws"
        )
    lhs, rhs = der.resolve(TREE1), der.resolve(TREE2)
    if not equivalent(lhs, rhs):
        raise AssertionError(f"generated an inequivalent pair: {lhs!r} / {rhs!r}")
    laws = tuple(name for e in der.log for name in e.laws)
    return Question(lhs, rhs, laws, seed_info, index)


def generate_set(info: str, count: int, params: GenParams | None = None) -> list[Question]:
    """``count`` questions drawn in sequence from one stream seeded by ``info``."""
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    params = params or GenParams()
    stream = derive(info, params.stride)
    return [generate_pair(stream, params, info, i) for i in range(count)]

