"""Hash-consed rewrite engine for the law-distance search.

Terms are interned into a :class:`TermBank` so that a term is an ``int`` and
structural equality is id equality. Rewrites available at a subterm are
computed once per distinct subterm and reused by every state containing it.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from eqgen import lawbook
from eqgen.proposition import (
    BINARY_OPERATORS,
    Binary,
    Constant,
    Negation,
    Prop,
    Variable,
    variables,
)

FORWARD, BACKWARD = "forward", "backward"

CONST, VAR, NEG = 0, 1, 2
_OP_CODE = {op: 3 + i for i, op in enumerate(BINARY_OPERATORS)}
_CODE_OP = {code: op for op, code in _OP_CODE.items()}


class TermBank:
    """Interning table: node tuple ``(kind, a, b)`` <-> integer id."""

    def __init__(self) -> None:
        self.nodes: list[tuple] = []
        self.ids: dict[tuple, int] = {}

    def intern(self, node: tuple) -> int:
        tid = self.ids.get(node)
        if tid is None:
            tid = self.ids[node] = len(self.nodes)
            self.nodes.append(node)
        return tid

    def size(self, tid: int) -> int:
        kind, a, b = self.nodes[tid]
        if kind <= VAR:
            return 1
        if kind == NEG:
            return 1 + self.size(a)
        return 1 + self.size(a) + self.size(b)

    def add(self, p: Prop) -> int:
        if isinstance(p, Constant):
            return self.intern((CONST, p.value, None))
        if isinstance(p, Variable):
            return self.intern((VAR, p.name, None))
        if isinstance(p, Negation):
            return self.intern((NEG, self.add(p.child), None))
        return self.intern((_OP_CODE[p.op], self.add(p.left), self.add(p.right)))

    def prop(self, tid: int) -> Prop:
        kind, a, b = self.nodes[tid]
        if kind == CONST:
            return Constant(a)
        if kind == VAR:
            return Variable(a)
        if kind == NEG:
            return Negation(self.prop(a))
        return Binary(_CODE_OP[kind], self.prop(a), self.prop(b))

    def positions(self, tid: int) -> Iterator[tuple[tuple[int, ...], int]]:
        """(position, subterm id) pairs in preorder."""
        stack = [((), tid)]
        nodes = self.nodes
        while stack:
            pos, t = stack.pop()
            yield pos, t
            kind, a, b = nodes[t]
            if kind >= 3:
                stack.append((pos + (1,), b))
                stack.append((pos + (0,), a))
            elif kind == NEG:
                stack.append((pos + (0,), a))

    def at(self, tid: int, position: tuple[int, ...]) -> int:
        for i in position:
            tid = self.nodes[tid][1 + i]
        return tid

    def replace(self, tid: int, position: tuple[int, ...], new: int, lookup_only: bool = False) -> int | None:
        """``tid`` with the subterm at ``position`` swapped for ``new``.

        With ``lookup_only`` nothing is interned; ``None`` means the result
        contains a node never seen before (so it is in no visited set).
        """
        nodes = self.nodes
        spine = []
        t = tid
        for i in position:
            spine.append((t, i))
            t = nodes[t][1 + i]
        cur = new
        ids = self.ids
        for parent, i in reversed(spine):
            kind, a, b = nodes[parent]
            node = (kind, cur, b) if i == 0 else (kind, a, cur)
            nxt = ids.get(node)
            if nxt is None:
                if lookup_only:
                    return None
                nxt = ids[node] = len(nodes)
                nodes.append(node)
            cur = nxt
        return cur

    def key(self, tid: int) -> str:
        return self.prop(tid).key()


@dataclass(frozen=True)
class Move:
    law: str
    direction: str
    pattern: Prop
    replacement: Prop
    restricted: frozenset[str]  # meta-variables on one side of the law only
    free: str | None  # restricted meta-variable the pattern does not bind

    @property
    def introduces(self) -> bool:
        return self.free is not None


def _build_moves() -> tuple[Move, ...]:
    out = []
    for law in lawbook.catalog():
        one_sided = frozenset(set(variables(law.lhs)) ^ set(variables(law.rhs)))
        for direction, pat, rep in ((FORWARD, law.lhs, law.rhs), (BACKWARD, law.rhs, law.lhs)):
            unbound = [v for v in variables(rep) if v not in variables(pat)]
            assert len(unbound) <= 1
            out.append(Move(law.name, direction, pat, rep, one_sided, unbound[0] if unbound else None))
    return tuple(out)


MOVES = _build_moves()


def _root_kind(p: Prop) -> int | None:
    if isinstance(p, Variable):
        return None
    if isinstance(p, Constant):
        return CONST
    if isinstance(p, Negation):
        return NEG
    return _OP_CODE[p.op]


class Engine:
    """Single law applications over interned terms with a fixed filler pool."""

    def __init__(self, bank: TermBank, pool: Iterable[int]):
        self.bank = bank
        self.pool = tuple(pool)
        self.pool_set = frozenset(self.pool)
        self._cache: dict[int, tuple[tuple[Move, int], ...]] = {}
        self._elim_cache: dict[int, tuple[tuple[Move, int], ...]] = {}
        self._wild = [m for m in MOVES if _root_kind(m.pattern) is None]
        self._rooted: dict[int, list[Move]] = {}
        for m in MOVES:
            k = _root_kind(m.pattern)
            if k is not None:
                self._rooted.setdefault(k, []).append(m)
        self._true = bank.intern((CONST, True, None))
        self._false = bank.intern((CONST, False, None))

    def _match(self, pat: Prop, tid: int, binding: dict[str, int]) -> bool:
        if isinstance(pat, Variable):
            bound = binding.get(pat.name)
            if bound is None:
                binding[pat.name] = tid
                return True
            return bound == tid
        kind, a, b = self.bank.nodes[tid]
        if isinstance(pat, Constant):
            return kind == CONST and a == pat.value
        if isinstance(pat, Negation):
            return kind == NEG and self._match(pat.child, a, binding)
        return (
            kind == _OP_CODE[pat.op]
            and self._match(pat.left, a, binding)
            and self._match(pat.right, b, binding)
        )

    def _build(self, schema: Prop, binding: dict[str, int]) -> int:
        if isinstance(schema, Variable):
            return binding[schema.name]
        if isinstance(schema, Constant):
            return self._true if schema.value else self._false
        if isinstance(schema, Negation):
            return self.bank.intern((NEG, self._build(schema.child, binding), None))
        return self.bank.intern(
            (_OP_CODE[schema.op], self._build(schema.left, binding), self._build(schema.right, binding))
        )

    def rewrites(self, tid: int) -> tuple[tuple[Move, int], ...]:
        """Every (move, replacement subterm) applicable at the root of ``tid``."""
        hit = self._cache.get(tid)
        if hit is not None:
            return hit
        out = []
        kind = self.bank.nodes[tid][0]
        for move in self._wild + self._rooted.get(kind, []):
            binding: dict[str, int] = {}
            if not self._match(move.pattern, tid, binding):
                continue
            if any(binding[v] not in self.pool_set for v in move.restricted if v in binding):
                continue
            if move.free is None:
                out.append((move, self._build(move.replacement, binding)))
            else:
                for filler in self.pool:
                    binding[move.free] = filler
                    out.append((move, self._build(move.replacement, binding)))
        result = tuple(out)
        self._cache[tid] = result
        return result

    def successors(
        self, tid: int, lookup_only: bool = False, skip_introductions: bool = False
    ) -> Iterator[tuple[Move, tuple[int, ...], int]]:
        """(move, position, resulting term); duplicates within one call are dropped."""
        seen = {tid}
        bank = self.bank
        for pos, sub in bank.positions(tid):
            for move, new in self.rewrites(sub):
                if skip_introductions and move.introduces:
                    continue
                result = bank.replace(tid, pos, new, lookup_only)
                if result is None or result in seen:
                    continue
                seen.add(result)
                yield move, pos, result

    def _eliminations_at(self, tid: int) -> tuple[tuple[Move, int], ...]:
        hit = self._elim_cache.get(tid)
        if hit is not None:
            return hit
        out = []
        kind = self.bank.nodes[tid][0]
        for move in self._rooted.get(kind, []):
            if not move.restricted or move.free is not None:
                continue
            binding: dict[str, int] = {}
            if self._match(move.pattern, tid, binding) and all(
                binding[v] in self.pool_set for v in move.restricted
            ):
                out.append((move, self._build(move.replacement, binding)))
        result = tuple(out)
        self._elim_cache[tid] = result
        return result

    def eliminations(self, tid: int) -> Iterator[tuple[Move, tuple[int, ...], int]]:
        """Moves undoing a pool introduction (Absorption, Domination, Negation left to right).

        ``x`` reaches ``y`` by an introduction exactly when ``y`` reaches ``x``
        by one of these, so indexing a visited set by them detects meetings
        without enumerating fillers.
        """
        bank = self.bank
        for pos, sub in bank.positions(tid):
            for move, new in self._eliminations_at(sub):
                yield move, pos, bank.replace(tid, pos, new)
