"""Equivalence checking and rewrite distance between propositions.

Truth tables are computed as bit vectors: for ``n`` variables every node
evaluates to one Python int of ``2**n`` bits, bit ``k`` holding the value
under assignment ``k``. Assignment ``k`` gives the ``i``-th variable the
value true iff bit ``n - 1 - i`` of ``k`` is clear, so index 0 is the
all-true row and rows follow ``itertools.product((True, False), ...)``.

Rewrite distance counts single law applications, each at one subterm and in
either direction. Law meta-variables that occur on only one side of a law
(the ``q`` of Absorption, the ``p`` of Domination and Negation) can only be
bound to subterms of the two endpoints; this keeps the move set finite and
makes every move reversible, so searching from both ends is exact.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from eqgen.proposition import Constant, Negation, Operator, Prop, Variable, size, subterms, variables
from eqgen.rewrite import BACKWARD, FORWARD, Engine, TermBank

MAX_VARIABLES = 20
DEFAULT_MAX_DEPTH = 10
FRONTIER_CAP = 2_000_000
NEQ = "NEQ"


class TooManyVariables(ValueError):
    pass


# -- truth tables -----------------------------------------------------------


def _variable_mask(i: int, n: int) -> int:
    block = 1 << (n - 1 - i)  # run length of equal values for variable i
    width = 2 * block
    mask = (1 << block) - 1
    while width < (1 << n):
        mask |= mask << width
        width *= 2
    return mask


def truth_table(p: Prop, names: Sequence[str]) -> int:
    n = len(names)
    full = (1 << (1 << n)) - 1
    masks = {name: _variable_mask(i, n) for i, name in enumerate(names)}
    cache: dict[Prop, int] = {}

    def ev(node: Prop) -> int:
        hit = cache.get(node)
        if hit is not None:
            return hit
        if isinstance(node, Constant):
            out = full if node.value else 0
        elif isinstance(node, Variable):
            out = masks[node.name]
        elif isinstance(node, Negation):
            out = full ^ ev(node.child)
        else:
            a, b = ev(node.left), ev(node.right)
            op = node.op
            if op is Operator.AND:
                out = a & b
            elif op is Operator.OR:
                out = a | b
            elif op is Operator.IMPLIES:
                out = (full ^ a) | b
            else:
                out = full ^ (a ^ b)
        cache[node] = out
        return out

    return ev(p)


def shared_variables(a: Prop, b: Prop) -> list[str]:
    names = variables(a)
    names += [x for x in variables(b) if x not in names]
    return names


def counterexample(a: Prop, b: Prop) -> dict[str, bool] | None:
    """First assignment (in truth-table row order) on which ``a`` and ``b`` differ."""
    names = shared_variables(a, b)
    if len(names) > MAX_VARIABLES:
        raise TooManyVariables(f"{len(names)} variables exceed the limit of {MAX_VARIABLES}")
    diff = truth_table(a, names) ^ truth_table(b, names)
    if not diff:
        return None
    row = (diff & -diff).bit_length() - 1
    n = len(names)
    return {name: not (row >> (n - 1 - i)) & 1 for i, name in enumerate(names)}


def equivalent(a: Prop, b: Prop) -> bool:
    return counterexample(a, b) is None


# -- rewriting --------------------------------------------------------------


class Step(NamedTuple):
    law: str
    direction: str
    position: tuple[int, ...]
    result: Prop


@dataclass(frozen=True)
class StepResult:
    steps: int | None  # None: not found within the depth limit or frontier cap
    path: tuple[Step, ...] | None = None

    @property
    def found(self) -> bool:
        return self.steps is not None


def term_pool(*terms: Prop) -> tuple[Prop, ...]:
    """Distinct subterms of ``terms``, smallest first: the fillers for introductions."""
    seen: dict[Prop, None] = {}
    for t in terms:
        for _, sub in subterms(t):
            seen.setdefault(sub)
    return tuple(sorted(seen, key=lambda s: (size(s), s.key())))


def _flip(direction: str) -> str:
    return BACKWARD if direction == FORWARD else FORWARD


# parent record: (previous term, law, direction, position) of the move previous -> term
_Parent = tuple[int, str, str, tuple[int, ...]]


def min_steps(
    a: Prop, b: Prop, max_depth: int = DEFAULT_MAX_DEPTH, frontier_cap: int = FRONTIER_CAP
) -> StepResult:
    """Fewest law applications turning ``a`` into ``b``, by bidirectional BFS.

    Layers are expanded one at a time on the cheaper side; a state reached
    from both ends closes the search. The final permitted layer is only
    probed against the other side's visited set, and introductions there are
    found through an elimination index instead of enumerating fillers.
    """
    if a == b:
        return StepResult(0, ())
    if max_depth <= 0:
        return StepResult(None)
    bank = TermBank()
    ends = (bank.add(a), bank.add(b))
    engine = Engine(bank, (bank.add(t) for t in term_pool(a, b)))
    parents: list[dict[int, _Parent | None]] = [{ends[0]: None}, {ends[1]: None}]
    frontiers = [[ends[0]], [ends[1]]]
    depth = [0, 0]

    while depth[0] + depth[1] < max_depth:
        # cost proxy: frontier length times the size of that side's endpoint
        work = [len(frontiers[i]) * size(t) for i, t in enumerate((a, b))]
        side = 0 if work[0] <= work[1] else 1
        other = 1 - side
        mine, theirs = parents[side], parents[other]

        if depth[0] + depth[1] + 1 == max_depth:
            meet = _probe(engine, frontiers[side], theirs, work[side])
            if meet is None:
                return StepResult(None)
            x, y, law, direction, pos = meet
            return _join(bank, parents, side, x, y, (law, direction, pos))

        nxt = []
        for x in frontiers[side]:
            for move, pos, y in engine.successors(x):
                if y in mine:
                    continue
                mine[y] = (x, move.law, move.direction, pos)
                if y in theirs:
                    return _join(bank, parents, side, y, y, None)
                nxt.append(y)
            if len(mine) > frontier_cap:
                return StepResult(None)
        if not nxt:
            return StepResult(None)
        frontiers[side] = nxt
        depth[side] += 1
    return StepResult(None)


def _probe(engine: Engine, frontier, theirs, frontier_work: int):
    """A move from ``frontier`` into ``theirs``, as (x, y, law, direction, position)."""
    index_cost = len(theirs) * engine.bank.size(next(iter(theirs)))
    use_index = index_cost < frontier_work * 2 * max(1, len(engine.pool))
    index: dict[int, tuple] = {}
    if use_index:
        for y in theirs:
            for move, pos, x in engine.eliminations(y):
                # y -> x eliminates, so x -> y is the reverse introduction
                index.setdefault(x, (y, move.law, _flip(move.direction), pos))
    for x in frontier:
        for move, pos, y in engine.successors(x, lookup_only=True, skip_introductions=use_index):
            if y in theirs:
                return x, y, move.law, move.direction, pos
        if use_index and x in index:
            y, law, direction, pos = index[x]
            return x, y, law, direction, pos
    return None


def _join(bank: TermBank, parents, side: int, x: int, y: int, link) -> StepResult:
    """Path from ``a`` to ``b`` through ``x`` (on ``side``) and ``y`` (other side).

    ``link`` is the (law, direction, position) move x -> y, or None when x == y.
    """
    def chain(tree, node):
        out = []
        while tree[node] is not None:
            prev, law, direction, pos = tree[node]
            out.append((prev, law, direction, pos, node))
            node = prev
        return out

    if side == 0:
        a_node, b_node = x, y
        bridge = link
    else:
        a_node, b_node = y, x
        bridge = None if link is None else (link[0], _flip(link[1]), link[2])

    path: list[Step] = []
    for prev, law, direction, pos, node in reversed(chain(parents[0], a_node)):
        path.append(Step(law, direction, pos, bank.prop(node)))
    if bridge is not None:
        path.append(Step(bridge[0], bridge[1], bridge[2], bank.prop(b_node)))
    for prev, law, direction, pos, node in chain(parents[1], b_node):
        path.append(Step(law, _flip(direction), pos, bank.prop(prev)))
    return StepResult(len(path), tuple(path))


# -- histograms -------------------------------------------------------------


def over_bucket(max_depth: int) -> str:
    return f">{max_depth}"


def classify_pair(a: Prop, b: Prop, max_depth: int = DEFAULT_MAX_DEPTH) -> int | str:
    if not equivalent(a, b):
        return NEQ
    result = min_steps(a, b, max_depth)
    return result.steps if result.found else over_bucket(max_depth)


def classify(pairs: Iterable[tuple[Prop, Prop]], max_depth: int = DEFAULT_MAX_DEPTH) -> Counter:
    """Histogram of step counts, with ``>max_depth`` and ``NEQ`` buckets."""
    return Counter(classify_pair(a, b, max_depth) for a, b in pairs)


def bucket_labels(max_depth: int) -> list[int | str]:
    return [*range(max_depth + 1), over_bucket(max_depth), NEQ]


def format_histogram(hist: Counter, max_depth: int = DEFAULT_MAX_DEPTH, errors: int = 0) -> str:
    labels = bucket_labels(max_depth)
    head = ["Steps", *map(str, labels), "Total"]
    row = ["Count", *(str(hist.get(k, 0)) for k in labels), str(sum(hist.values()))]
    if errors:
        head.append("Errors")
        row.append(str(errors))
    widths = [max(len(h), len(r)) for h, r in zip(head, row)]
    lines = ["  ".join(x.rjust(w) for x, w in zip(line, widths)) for line in (head, row)]
    return "\n".join(lines)
