"""Dynamic program computing a maximum two-neighbour packing over a nice
tree decomposition.

Per bag vertex a state records whether the vertex is chosen and how many
chosen vertices its closed neighbourhood contains so far; the admissible
combinations are (out,0), (out,1), (out,2), (in,1), (in,2), encoded as digits
0..4 of a base-5 index over the sorted bag. A node's table is a dense list of
length 5**|bag| holding the best partial packing size per state, with -1 as
the infeasible sentinel (every feasible entry is >= 0, and all arithmetic is
guarded so the sentinel never mixes into sums).

Witnesses are reconstructed by one root-to-leaves trace that re-derives each
argmax from the stored tables, which is equivalent to storing back-pointers
but keeps the tables plain integer arrays.
"""

from __future__ import annotations

import gc

import numpy as np

from .decomposition import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    TreeDecomposition,
    decompose_heuristic,
    decompose_tree,
    make_nice,
    validate,
)
from .errors import PreconditionError
from .graph import Graph
from .oracles import SolveResult, is_two_neighbour_packing

NEG = -1  # infeasible; strictly below any packing size

_POW5 = tuple(5 ** i for i in range(28))

# transition tables are cached by structural signature, not by node, so long
# chains (paths) reuse one program; the join cache is capped since its numpy
# arrays are large
_forget_cache: dict = {}
_intro_cache: dict = {}
_join_py_cache: dict = {}
_join_np_cache: dict = {}
_JOIN_NP_CACHE_MAX = 32
_JOIN_NUMPY_MIN_SIZE = 626  # bags of 4+ vertices take the vectorized path


def encode_state(bag, chosen, counts) -> int:
    """Index of the state with chosen-set ``chosen`` and neighbour counts
    ``counts`` (a mapping over the bag) in the table of a node with ``bag``."""
    index = 0
    for pos, v in enumerate(sorted(bag)):
        c = counts[v]
        if v in chosen:
            if c not in (1, 2):
                raise ValueError(f"chosen vertex {v} needs count 1 or 2, got {c}")
            digit = 2 + c
        else:
            if c not in (0, 1, 2):
                raise ValueError(f"count {c} for vertex {v} out of range")
            digit = c
        index += digit * _POW5[pos]
    return index


def decode_state(bag, index) -> tuple[frozenset, dict[int, int]]:
    """Inverse of encode_state: (chosen subset, per-vertex neighbour count)."""
    chosen = set()
    counts = {}
    for v in sorted(bag):
        digit = index % 5
        index //= 5
        if digit >= 3:
            chosen.add(v)
            counts[v] = digit - 2
        else:
            counts[v] = digit
    return frozenset(chosen), counts


def _forget_program(child_size: int, pos: int) -> list[int]:
    """Map from child state index to parent state index (digit at pos dropped)."""
    key = (child_size, pos)
    prog = _forget_cache.get(key)
    if prog is None:
        low = _POW5[pos]
        high = _POW5[pos + 1]
        prog = [(c // high) * low + c % low for c in range(_POW5[child_size])]
        _forget_cache[key] = prog
    return prog


def _intro_program(size: int, pos: int, nbr_mask: int) -> tuple[list[int], list[int]]:
    """Per parent state: child state index (or -1 if infeasible) and the +1
    flag for the introduced vertex being chosen.

    ``nbr_mask`` marks which child-bag positions are neighbours of the new
    vertex; their counts are one lower in the child state.
    """
    key = (size, pos, nbr_mask)
    cached = _intro_cache.get(key)
    if cached is not None:
        return cached
    table = _POW5[size]
    cidx = [NEG] * table
    add = [0] * table
    for s in range(table):
        digits = []
        x = s
        for _ in range(size):
            digits.append(x % 5)
            x //= 5
        d = digits[pos]
        rest = digits[:pos] + digits[pos + 1 :]
        in_b = d >= 3
        count_v = d - 2 if in_b else d
        nb = (1 if in_b else 0) + sum(
            1 for q, dq in enumerate(rest) if (nbr_mask >> q) & 1 and dq >= 3
        )
        if count_v != nb:
            continue
        child_digits = list(rest)
        if in_b:
            ok = True
            for q, dq in enumerate(rest):
                if (nbr_mask >> q) & 1:
                    # chosen neighbours drop to count 0 only if unchosen
                    if dq in (0, 3):
                        ok = False
                        break
                    child_digits[q] = dq - 1
            if not ok:
                continue
        c = 0
        for q in range(size - 2, -1, -1):
            c = c * 5 + child_digits[q]
        cidx[s] = c
        add[s] = 1 if in_b else 0
    _intro_cache[key] = (cidx, add)
    return cidx, add


def _state_digits(s: int, size: int) -> list[int]:
    digits = []
    for _ in range(size):
        digits.append(s % 5)
        s //= 5
    return digits


def _join_splits(s: int, size: int, adj_masks) -> tuple[int, list[tuple[int, int]]]:
    """All (left state, right state) pairs combining to state ``s`` at a join,
    in canonical order, plus |B| for the overlap correction."""
    digits = _state_digits(s, size)
    b_mask = 0
    for q, d in enumerate(digits):
        if d >= 3:
            b_mask |= 1 << q
    options: list[list[tuple[int, int]]] = []
    for q, d in enumerate(digits):
        in_b = d >= 3
        count = d - 2 if in_b else d
        target = count + (1 if in_b else 0) + (adj_masks[q] & b_mask).bit_count()
        lo = 1 if in_b else 0
        opts = []
        for f1 in range(lo, 3):
            f2 = target - f1
            if lo <= f2 <= 2:
                opts.append((f1 + 2 if in_b else f1, f2 + 2 if in_b else f2))
        if not opts:
            return b_mask.bit_count(), []
        options.append(opts)
    pairs = [(0, 0)]
    for q, opts in enumerate(options):
        mul = _POW5[q]
        pairs = [(s1 + d1 * mul, s2 + d2 * mul) for s1, s2 in pairs for d1, d2 in opts]
    return b_mask.bit_count(), pairs


def _join_py_program(size: int, adj_masks: tuple[int, ...]):
    key = (size, adj_masks)
    prog = _join_py_cache.get(key)
    if prog is None:
        prog = [_join_splits(s, size, adj_masks) for s in range(_POW5[size])]
        _join_py_cache[key] = prog
    return prog


def _join_np_program(size: int, adj_masks: tuple[int, ...]):
    key = (size, adj_masks)
    prog = _join_np_cache.get(key)
    if prog is None:
        if len(_join_np_cache) >= _JOIN_NP_CACHE_MAX:
            _join_np_cache.pop(next(iter(_join_np_cache)))
        idx1: list[int] = []
        idx2: list[int] = []
        target: list[int] = []
        bcard = [0] * _POW5[size]
        for s in range(_POW5[size]):
            card, pairs = _join_splits(s, size, adj_masks)
            bcard[s] = card
            for s1, s2 in pairs:
                idx1.append(s1)
                idx2.append(s2)
                target.append(s)
        tgt = np.asarray(target, dtype=np.int64)
        order = np.argsort(tgt, kind="stable")
        sorted_tgt = tgt[order]
        starts = np.flatnonzero(np.r_[True, sorted_tgt[1:] != sorted_tgt[:-1]])
        prog = (
            np.asarray(idx1, dtype=np.int64)[order],
            np.asarray(idx2, dtype=np.int64)[order],
            starts,
            sorted_tgt[starts],
            bcard,
        )
        _join_np_cache[key] = prog
    return prog


def _bag_position(bag, v) -> int:
    try:
        return bag.index(v)
    except ValueError:
        raise ValueError(f"vertex {v} not in bag {bag}") from None


def _intro_signature(ntd: NiceTreeDecomposition, t: int, g: Graph):
    bag = ntd.bags[t]
    v = ntd.payloads[t]
    pos = _bag_position(bag, v)
    rest = bag[:pos] + bag[pos + 1 :]
    nbrs = set(g.adj[v])
    mask = 0
    for q, u in enumerate(rest):
        if u in nbrs:
            mask |= 1 << q
    return len(bag), pos, mask


def _join_adj_masks(ntd: NiceTreeDecomposition, t: int, g: Graph) -> tuple[int, ...]:
    bag = ntd.bags[t]
    masks = []
    for u in bag:
        m = 0
        nbrs = set(g.adj[u])
        for q, w in enumerate(bag):
            if w != u and w in nbrs:
                m |= 1 << q
        masks.append(m)
    return tuple(masks)


def dp_leaf(ntd: NiceTreeDecomposition, t: int) -> list[int]:
    """Leaf table: empty packing, or the bag vertex alone with count 1."""
    if ntd.kinds[t] != LEAF:
        raise ValueError(f"node {t} is not a leaf")
    return [0, NEG, NEG, 1, NEG]


def dp_forget(ntd: NiceTreeDecomposition, t: int, child_table: list[int]) -> list[int]:
    """Forget table: per state, the best child entry over the five extensions
    of the dropped vertex."""
    if ntd.kinds[t] != FORGET:
        raise ValueError(f"node {t} is not a forget node")
    child = ntd.children[t][0]
    child_bag = ntd.bags[child]
    prog = _forget_program(len(child_bag), _bag_position(child_bag, ntd.payloads[t]))
    new = [NEG] * _POW5[len(ntd.bags[t])]
    for c, val in enumerate(child_table):
        if val >= 0:
            s = prog[c]
            if val > new[s]:
                new[s] = val
    return new


def dp_introduce(ntd: NiceTreeDecomposition, t: int, child_table: list[int], g: Graph) -> list[int]:
    """Introduce table: states whose count at the new vertex disagrees with its
    chosen bag neighbours are infeasible; otherwise the child entry carries
    over, plus one when the new vertex is chosen (its chosen neighbours' child
    counts are then one lower)."""
    if ntd.kinds[t] != INTRODUCE:
        raise ValueError(f"node {t} is not an introduce node")
    size, pos, mask = _intro_signature(ntd, t, g)
    cidx, add = _intro_program(size, pos, mask)
    new = [NEG] * _POW5[size]
    for s in range(_POW5[size]):
        c = cidx[s]
        if c >= 0:
            val = child_table[c]
            if val >= 0:
                new[s] = val + add[s]
    return new


def dp_join(
    ntd: NiceTreeDecomposition,
    t: int,
    left_table: list[int],
    right_table: list[int],
    g: Graph,
) -> list[int]:
    """Join table: best sum of child entries over all count splits, minus the
    double-counted |B|."""
    if ntd.kinds[t] != JOIN:
        raise ValueError(f"node {t} is not a join node")
    bag = ntd.bags[t]
    size = len(bag)
    adj_masks = _join_adj_masks(ntd, t, g)
    table = _POW5[size]
    if table >= _JOIN_NUMPY_MIN_SIZE:
        idx1, idx2, starts, states, bcard = _join_np_program(size, adj_masks)
        left = np.asarray(left_table, dtype=np.int64)
        right = np.asarray(right_table, dtype=np.int64)
        a = left[idx1]
        b = right[idx2]
        sums = a + b
        sums[(a < 0) | (b < 0)] = -(1 << 40)
        best = np.maximum.reduceat(sums, starts) if len(sums) else np.empty(0, dtype=np.int64)
        new = [NEG] * table
        for s, val in zip(states.tolist(), best.tolist()):
            if val >= 0:
                new[s] = val - bcard[s]
        return new
    prog = _join_py_program(size, adj_masks)
    new = [NEG] * table
    for s in range(table):
        card, pairs = prog[s]
        best = NEG
        for s1, s2 in pairs:
            a = left_table[s1]
            if a < 0:
                continue
            b = right_table[s2]
            if b >= 0 and a + b > best:
                best = a + b
        if best >= 0:
            new[s] = best - card
    return new


def compute_tables(g: Graph, ntd: NiceTreeDecomposition) -> list[list[int]]:
    """Evaluate the whole decomposition bottom-up; one table per node.

    Forget and introduce dominate long chains, so their transitions are
    inlined here; joins go through dp_join.
    """
    tables: list[list[int] | None] = [None] * ntd.node_count
    kinds = ntd.kinds
    bags = ntd.bags
    payloads = ntd.payloads
    children = ntd.children
    adj = g.adj
    pow5 = _POW5
    forget_progs = _forget_cache
    for t in ntd.order:
        kind = kinds[t]
        if kind == FORGET:
            child = children[t][0]
            cb = bags[child]
            low = pow5[cb.index(payloads[t])]
            high = 5 * low
            ct = tables[child]
            # the five extensions of a parent state sit on an arithmetic
            # slice of the child table, and max() over NEG entries is NEG
            tables[t] = [
                max(ct[h * high + l : h * high + l + high : low])
                for h in range(pow5[len(cb) - 1] // low)
                for l in range(low)
            ]
        elif kind == INTRODUCE:
            bag = bags[t]
            v = payloads[t]
            pos = bag.index(v)
            nbrs = adj[v]
            mask = 0
            q = 0
            for u in bag:
                if u != v:
                    if u in nbrs:
                        mask |= 1 << q
                    q += 1
            cidx, add = _intro_program(len(bag), pos, mask)
            ct = tables[children[t][0]]
            tables[t] = [
                NEG if c < 0 or (val := ct[c]) < 0 else val + a
                for c, a in zip(cidx, add)
            ]
        elif kind == LEAF:
            tables[t] = [0, NEG, NEG, 1, NEG]
        else:
            left, right = children[t]
            tables[t] = dp_join(ntd, t, tables[left], tables[right], g)
    return tables  # type: ignore[return-value]


def trace_entry(
    g: Graph, ntd: NiceTreeDecomposition, tables: list[list[int]], node: int, state: int
) -> frozenset:
    """Packing realizing a finite table entry, rebuilt by re-deriving each
    decision top-down; deterministic (first candidate in canonical order)."""
    if tables[node][state] < 0:
        raise ValueError(f"entry {state} at node {node} is infeasible")
    chosen: set[int] = set()
    stack = [(node, state)]
    while stack:
        t, s = stack.pop()
        value = tables[t][s]
        kind = ntd.kinds[t]
        if kind == LEAF:
            if s == 3:
                chosen.add(ntd.payloads[t])
            continue
        if kind == FORGET:
            child = ntd.children[t][0]
            child_bag = ntd.bags[child]
            pos = _bag_position(child_bag, ntd.payloads[t])
            low = _POW5[pos]
            high = _POW5[pos + 1]
            base = (s // low) * high + s % low
            for d in range(5):
                c = base + d * low
                if tables[child][c] == value:
                    stack.append((child, c))
                    break
            else:
                raise RuntimeError("inconsistent forget table")
            continue
        if kind == INTRODUCE:
            size, pos, mask = _intro_signature(ntd, t, g)
            cidx, add = _intro_program(size, pos, mask)
            c = cidx[s]
            if c < 0:
                raise RuntimeError("inconsistent introduce table")
            if add[s]:
                chosen.add(ntd.payloads[t])
            stack.append((ntd.children[t][0], c))
            continue
        left, right = ntd.children[t]
        size = len(ntd.bags[t])
        card, pairs = _join_splits(s, size, _join_adj_masks(ntd, t, g))
        for s1, s2 in pairs:
            a = tables[left][s1]
            b = tables[right][s2]
            if a >= 0 and b >= 0 and a + b - card == value:
                stack.append((left, s1))
                stack.append((right, s2))
                break
        else:
            raise RuntimeError("inconsistent join table")
    return frozenset(chosen)


def solve(
    g: Graph,
    ntd: NiceTreeDecomposition | None = None,
    td: TreeDecomposition | None = None,
) -> SolveResult:
    """Maximum two-neighbour packing via the decomposition dynamic program.

    Without a decomposition one is built (exact for forests, min-fill
    otherwise). A caller-supplied decomposition is validated first. The
    returned witness is always re-checked against the packing definition.
    """
    if g.n == 0:
        return SolveResult(0, frozenset(), 0)
    # pausing the cyclic collector is safe (nothing here forms cycles) and
    # saves a sizeable fraction on instances with hundreds of thousands of
    # nodes
    gc_was_enabled = gc.isenabled()
    if gc_was_enabled:
        gc.disable()
    try:
        if ntd is None:
            if td is not None:
                ntd = make_nice(td, g)  # make_nice validates
            else:
                try:
                    base = decompose_tree(g)
                except ValueError:  # not a forest
                    base = decompose_heuristic(g)
                ntd = make_nice(base, g, pre_validated=True)
        else:
            if ntd.n != g.n:
                raise PreconditionError(
                    f"decomposition is over n={ntd.n}, graph has n={g.n}"
                )
            problems = ntd.structural_violations()
            if not problems:
                problems = [str(v) for v in validate(g, ntd.to_tree_decomposition())]
            if problems:
                raise PreconditionError(f"invalid nice decomposition: {problems[0]}")
        tables = compute_tables(g, ntd)
        root_table = tables[ntd.root]
        value = max(root_table)
        if value < 0:
            raise RuntimeError("root table has no feasible entry")
        state = root_table.index(value)
        witness = trace_entry(g, ntd, tables, ntd.root, state)
    finally:
        if gc_was_enabled:
            gc.enable()
    if len(witness) != value or not is_two_neighbour_packing(g, witness):
        raise RuntimeError("dynamic program produced an invalid witness")
    return SolveResult(value, witness, ntd.node_count)
