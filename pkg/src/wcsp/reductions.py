"""Executable reductions between counting CSP instances.

Everything here transforms instances or function tables and computes partition
values through a caller-supplied evaluator, so each construction can be
cross-checked exactly against the enumeration oracle:

* coordinate projection / pinning / merging of tables,
* replacing a projected function by its preimage with fresh variables,
* eliminating Boolean pins through distinct-representative instances,
* recovering one unary weight by polynomial interpolation,
* parity-of-k gadgets over ternary parity and a zero pin,
* symmetrization of parity-supported ternary functions,
* unary extraction from affine-supported, non-pure-affine functions,
* Moebius inversion over the partition lattice for q-ary pins.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial, isqrt
from typing import Callable, Iterable, Mapping, Sequence

from .classify import has_affine_support, is_pure_affine
from .errors import InputError, InvariantViolation, Refusal
from .library import delta, full_disequality, parity_indicator, unary_weight
from .model import (
    Constraint,
    Instance,
    WeightFunction,
    index_to_tuple,
)

Evaluator = Callable[[Instance], Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# table transforms
# ---------------------------------------------------------------------------

def project(fn: WeightFunction, coordinates: Sequence[int]) -> WeightFunction:
    """Sum the function over all coordinates outside the given increasing set."""
    coords = tuple(coordinates)
    if list(coords) != sorted(set(coords)):
        raise InputError(f"projection coordinates must be strictly increasing, got {coords}")
    for i in coords:
        if not 0 <= i < fn.arity:
            raise InputError(f"projection coordinate {i} outside arity {fn.arity}")
    q = fn.domain_size
    table = [_ZERO] * q ** len(coords)
    for index, value in enumerate(fn.table):
        if not value:
            continue
        point = index_to_tuple(index, fn.arity, q)
        sub = 0
        for i in coords:
            sub = sub * q + point[i]
        table[sub] += value
    return WeightFunction(len(coords), q, tuple(table))


def pin_coordinate(fn: WeightFunction, coordinate: int, value: int) -> WeightFunction:
    """Fix one coordinate to a domain value, dropping it from the arity."""
    if not 0 <= coordinate < fn.arity:
        raise InputError(f"pin coordinate {coordinate} outside arity {fn.arity}")
    if not 0 <= value < fn.domain_size:
        raise InputError(f"pin value {value} outside domain of size {fn.domain_size}")
    q = fn.domain_size
    table = []
    for rest in product(range(q), repeat=fn.arity - 1):
        point = rest[:coordinate] + (value,) + rest[coordinate:]
        table.append(fn.lookup(point))
    return WeightFunction(fn.arity - 1, q, tuple(table))


def project_out(fn: WeightFunction, coordinate: int) -> WeightFunction:
    """Sum one coordinate away; equals the pointwise sum of its two pins."""
    keep = tuple(i for i in range(fn.arity) if i != coordinate)
    if len(keep) == fn.arity:
        raise InputError(f"coordinate {coordinate} outside arity {fn.arity}")
    return project(fn, keep)


def merge_coordinates(fn: WeightFunction, first: int, second: int) -> WeightFunction:
    """Identify two coordinates, keeping the later one as the shared input."""
    if first == second:
        raise InputError("cannot merge a coordinate with itself")
    for i in (first, second):
        if not 0 <= i < fn.arity:
            raise InputError(f"merge coordinate {i} outside arity {fn.arity}")
    lo, hi = sorted((first, second))
    q = fn.domain_size
    table = []
    for rest in product(range(q), repeat=fn.arity - 1):
        point = list(rest[:lo]) + [0] + list(rest[lo:])
        point[lo] = point[hi]
        table.append(fn.lookup(point))
    return WeightFunction(fn.arity - 1, q, tuple(table))


# ---------------------------------------------------------------------------
# projection simulation
# ---------------------------------------------------------------------------

def _fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name = base
    while name in taken:
        name += "_"
    return name


def simulate_projection(
    instance: Instance,
    projected_name: str,
    preimage: WeightFunction,
    coordinates: Sequence[int],
    preimage_name: str | None = None,
) -> Instance:
    """Replace every constraint on a projected function by its preimage.

    Each replaced constraint keeps its scope on the projection coordinates and
    receives fresh variables elsewhere; summing the fresh variables out
    recovers the original weight, so the partition value is preserved exactly.
    Refuses when the named function is not the projection of ``preimage``.
    """
    if projected_name not in instance.functions:
        raise InputError(f"unknown function {projected_name!r}")
    target = instance.functions[projected_name]
    coords = tuple(coordinates)
    if preimage.domain_size != instance.domain_size:
        raise InputError("preimage domain size differs from the instance")
    if project(preimage, coords).table != target.table:
        raise Refusal(
            f"{projected_name!r} is not the projection of the supplied function "
            f"onto coordinates {coords}"
        )
    if preimage_name is None:
        preimage_name = _fresh_name(
            projected_name + "_lift",
            set(instance.functions) - {projected_name},
        )
    catalog = {n: f for n, f in instance.functions.items() if n != projected_name}
    if preimage_name in catalog and catalog[preimage_name] != preimage:
        raise InputError(f"function name {preimage_name!r} already bound to a different table")
    catalog[preimage_name] = preimage

    hidden = [i for i in range(preimage.arity) if i not in coords]
    next_var = instance.num_variables
    constraints = []
    for c in instance.constraints:
        if c.function != projected_name:
            constraints.append(c)
            continue
        scope = [0] * preimage.arity
        for j, pos in enumerate(coords):
            scope[pos] = c.scope[j]
        for pos in hidden:
            scope[pos] = next_var
            next_var += 1
        constraints.append(Constraint(preimage_name, tuple(scope)))
    return Instance(next_var, instance.domain_size, catalog, tuple(constraints))


# ---------------------------------------------------------------------------
# Boolean pin elimination
# ---------------------------------------------------------------------------

def is_flip_symmetric(functions: Mapping[str, WeightFunction]) -> bool:
    """True when every function is invariant under negating all arguments."""
    for fn in functions.values():
        if fn.domain_size != 2:
            raise Refusal("flip symmetry is only defined for domain size 2")
        full = (1 << fn.arity) - 1
        for index, value in enumerate(fn.table):
            if value != fn.table[index ^ full]:
                return False
    return True


def pinning_reduce_boolean(instance: Instance, evaluator: Evaluator) -> Fraction:
    """Partition value of a Boolean instance whose pins are eliminated.

    Pin constraints (unary tables ``(1,0)`` / ``(0,1)``) are replaced by two
    representative variables; the evaluator only ever sees pin-free instances.
    For a flip-symmetric family the value is half the difference between the
    distinct-representative and merged-representative instances; otherwise an
    asymmetric table entry supplies a second equation and the two conditioned
    sums are separated exactly.
    """
    if instance.domain_size != 2:
        raise Refusal("pin elimination is only defined for domain size 2")
    pins_to = {(_ONE, _ZERO): 0, (_ZERO, _ONE): 1}
    pin_names = {
        name: pins_to[fn.table]
        for name, fn in instance.functions.items()
        if fn.arity == 1 and fn.table in pins_to
    }
    pinned_vars: dict[int, set[int]] = {0: set(), 1: set()}
    remaining = []
    for c in instance.constraints:
        if c.function in pin_names:
            pinned_vars[pin_names[c.function]].add(c.scope[0])
        else:
            remaining.append(c)
    if pinned_vars[0] & pinned_vars[1]:
        return _ZERO
    family = {n: f for n, f in instance.functions.items() if n not in pin_names}
    if not pinned_vars[0] and not pinned_vars[1]:
        return evaluator(
            Instance(instance.num_variables, 2, family, tuple(remaining))
        )

    free = [
        v
        for v in range(instance.num_variables)
        if v not in pinned_vars[0] and v not in pinned_vars[1]
    ]

    def build(rep_count: int) -> Instance:
        # Representatives take ids 0..rep_count-1; free variables follow.
        renumber = {v: rep_count + i for i, v in enumerate(free)}

        def remap(v: int) -> int:
            if v in pinned_vars[0]:
                return 0
            if v in pinned_vars[1]:
                return rep_count - 1
            return renumber[v]

        constraints = tuple(
            Constraint(c.function, tuple(remap(v) for v in c.scope)) for c in remaining
        )
        return Instance(rep_count + len(free), 2, family, constraints)

    split = build(2)  # one representative per pinned value
    merged = build(1)  # both pinned values share a single representative
    base_difference = evaluator(split) - evaluator(merged)
    if is_flip_symmetric(family):
        return base_difference / 2

    # Asymmetric family: find f and x with f(x) > f(negated x).
    for name, fn in family.items():
        full = (1 << fn.arity) - 1
        for index, value in enumerate(fn.table):
            mirror = fn.table[index ^ full]
            if value > mirror:
                witness_scope = index_to_tuple(index, fn.arity, 2)
                split_extra = Instance(
                    split.num_variables,
                    2,
                    family,
                    split.constraints + (Constraint(name, witness_scope),),
                )
                merged_extra = Instance(
                    merged.num_variables,
                    2,
                    family,
                    merged.constraints + (Constraint(name, (0,) * fn.arity),),
                )
                skew_difference = evaluator(split_extra) - evaluator(merged_extra)
                return (skew_difference - mirror * base_difference) / (value - mirror)
    raise InvariantViolation("family reported asymmetric but no witness entry exists")


# ---------------------------------------------------------------------------
# interpolation of one unary weight
# ---------------------------------------------------------------------------

def _solve_vandermonde(points: list[Fraction], values: list[Fraction]) -> list[Fraction]:
    """Exact coefficients of the polynomial through (points[i], values[i])."""
    size = len(points)
    rows = [[p**d for d in range(size)] + [values[i]] for i, p in enumerate(points)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if rows[r][col])
        rows[col], rows[pivot] = rows[pivot], rows[col]
        pivot_row = rows[col]
        for r in range(size):
            if r != col and rows[r][col]:
                ratio = rows[r][col] / pivot_row[col]
                rows[r] = [a - ratio * b for a, b in zip(rows[r], pivot_row)]
    return [rows[d][size] / rows[d][d] for d in range(size)]


def interpolation_polynomial(
    instance: Instance,
    unary_name: str,
    point: Fraction,
    evaluator: Evaluator,
) -> list[Fraction]:
    """Coefficients of the partition value as a polynomial in the unary weight.

    With ``m`` occurrences of the normalized unary ``(1, c)``, the value is a
    degree-<=m polynomial in the weight; evaluating at powers of ``point``
    (realized by stacking copies of the ``(1, point)`` unary) determines the
    coefficients through an exact Vandermonde solve.
    """
    if unary_name not in instance.functions:
        raise InputError(f"unknown function {unary_name!r}")
    fn = instance.functions[unary_name]
    if fn.arity != 1 or fn.domain_size != 2:
        raise InputError(f"{unary_name!r} must be a Boolean unary function")
    if fn.table[0] != 1:
        raise Refusal(f"{unary_name!r} must be normalized to table (1, c)")
    ratio = Fraction(point)
    if ratio <= 0 or ratio == 1:
        raise InputError(f"interpolation point must be positive and different from 1")

    occurrences = sum(1 for c in instance.constraints if c.function == unary_name)
    probe_name = _fresh_name("probe_unary", instance.functions)
    values = []
    for copies in range(occurrences + 1):
        catalog = {n: f for n, f in instance.functions.items() if n != unary_name}
        catalog[probe_name] = unary_weight(ratio)
        constraints: list[Constraint] = []
        for c in instance.constraints:
            if c.function == unary_name:
                constraints.extend([Constraint(probe_name, c.scope)] * copies)
            else:
                constraints.append(c)
        values.append(
            evaluator(
                Instance(instance.num_variables, 2, catalog, tuple(constraints))
            )
        )
    points = [ratio**j for j in range(occurrences + 1)]
    return _solve_vandermonde(points, values)


def interpolation_reduce(
    instance: Instance,
    unary_name: str,
    point: Fraction,
    evaluator: Evaluator,
) -> Fraction:
    """Exact partition value recovered by interpolation in the unary weight."""
    coefficients = interpolation_polynomial(instance, unary_name, point, evaluator)
    target = instance.functions[unary_name].table[1]
    result = _ZERO
    for coefficient in reversed(coefficients):
        result = result * target + coefficient
    return result


# ---------------------------------------------------------------------------
# parity gadgets
# ---------------------------------------------------------------------------

def parity_chain(width: int) -> Instance:
    """A gadget over ternary parity and zero pins realizing odd parity of k inputs.

    Variables ``0..width-1`` are the primary inputs; auxiliaries follow.  Every
    odd-parity primary tuple extends to exactly one satisfying assignment and
    even-parity tuples to none, so the gadget has ``2**(width-1)`` satisfying
    assignments.
    """
    if width < 1:
        raise InputError(f"parity chain needs at least one input, got {width}")
    constraints: list[Constraint] = []
    counter = width

    def fresh() -> int:
        nonlocal counter
        counter += 1
        return counter - 1

    def realize(variables: list[int]) -> None:
        if len(variables) == 3:
            constraints.append(Constraint("xor3", tuple(variables)))
            return
        if len(variables) < 3:
            pads = [fresh() for _ in range(3 - len(variables))]
            for pad in pads:
                constraints.append(Constraint("delta0", (pad,)))
            constraints.append(Constraint("xor3", tuple(variables + pads)))
            return
        half = (len(variables) + 1) // 2
        left_sum, right_sum, zero = fresh(), fresh(), fresh()
        realize(variables[:half] + [left_sum])
        realize(variables[half:] + [right_sum])
        constraints.append(Constraint("xor3", (left_sum, right_sum, zero)))
        constraints.append(Constraint("delta0", (zero,)))

    realize(list(range(width)))
    functions = {"xor3": parity_indicator(3), "delta0": delta(0)}
    return Instance(counter, 2, functions, tuple(constraints))


def _exact_sqrt(value: Fraction) -> Fraction:
    num, den = value.numerator, value.denominator
    root_num, root_den = isqrt(num), isqrt(den)
    if root_num * root_num != num or root_den * root_den != den:
        raise InvariantViolation(f"{value} has no exact rational square root")
    return Fraction(root_num, root_den)


def symmetrize_parity(
    fn: WeightFunction,
) -> tuple[WeightFunction, Fraction, WeightFunction]:
    """Symmetrize a parity-supported ternary function and rebalance it.

    Multiplies the function over all six argument orderings, then computes the
    unary weight ``c`` whose threefold product flattens the two support levels
    (the level ratio is a perfect square by construction).  Returns the
    symmetrized function, ``c``, and the flattened (pure affine) function.
    """
    if fn.arity != 3 or fn.domain_size != 2:
        raise InputError("parity symmetrization expects a Boolean ternary function")
    support = frozenset(fn.support_indices())
    odd_support = frozenset((1, 2, 4, 7))
    even_support = frozenset((0, 3, 5, 6))
    if support == odd_support:
        odd_case = True
    elif support == even_support:
        odd_case = False
    else:
        raise Refusal("support must be exactly the odd- or even-parity triples")

    table = []
    for index in range(8):
        x = index_to_tuple(index, 3, 2)
        value = _ONE
        for order in permutations(range(3)):
            value = value * fn.lookup((x[order[0]], x[order[1]], x[order[2]]))
        table.append(value)
    symmetrized = WeightFunction(3, 2, tuple(table))

    if odd_case:
        level_ratio = symmetrized.lookup((0, 0, 1)) / symmetrized.lookup((1, 1, 1))
    else:
        level_ratio = symmetrized.lookup((0, 0, 0)) / symmetrized.lookup((0, 1, 1))
    balance = _exact_sqrt(level_ratio)

    flattened = tuple(
        symmetrized.table[index] * balance ** bin(index).count("1")
        for index in range(8)
    )
    return symmetrized, balance, WeightFunction(3, 2, flattened)


# ---------------------------------------------------------------------------
# unary extraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnaryExtraction:
    """A normalized unary ``(1, ratio)`` with ``ratio`` outside {0, 1}."""

    function: WeightFunction
    ratio: Fraction
    column: int


@dataclass(frozen=True)
class PinRecursion:
    """A strictly smaller function that still carries two non-zero levels."""

    function: WeightFunction
    column: int
    value: int


def extract_unary(fn: WeightFunction) -> UnaryExtraction | PinRecursion:
    """One step toward a non-trivial unary from an unbalanced affine-support table.

    Scans columns left to right for a non-constant one.  If either side of
    that column still carries two distinct non-zero values the function is
    pinned there (0-side preferred) and the caller recurses; otherwise the
    projection onto the column is a scaled ``(1, ratio)`` unary -- the two
    sides of a non-constant column of an affine support are equally large, so
    the scale drops out.
    """
    if fn.domain_size != 2:
        raise Refusal("unary extraction is only defined for domain size 2")
    support = fn.support_indices()
    if not support:
        raise Refusal("unary extraction needs a non-empty support")
    if not has_affine_support(fn):
        raise Refusal("unary extraction requires an affine support")
    if is_pure_affine(fn):
        raise Refusal("the function is pure affine; there is no unary to extract")

    rows = [index_to_tuple(index, fn.arity, 2) for index in support]
    column = next(
        i
        for i in range(fn.arity)
        if any(row[i] != rows[0][i] for row in rows)
    )
    side_values: tuple[set[Fraction], set[Fraction]] = (set(), set())
    for row, index in zip(rows, support):
        side_values[row[column]].add(fn.table[index])
    for side in (0, 1):
        if len(side_values[side]) >= 2:
            return PinRecursion(pin_coordinate(fn, column, side), column, side)
    (low,) = side_values[0]
    (high,) = side_values[1]
    ratio = high / low
    return UnaryExtraction(unary_weight(ratio), ratio, column)


def extract_unary_iterated(fn: WeightFunction) -> tuple[UnaryExtraction, int]:
    """Iterate :func:`extract_unary` to completion; returns (result, pin steps)."""
    steps = 0
    current = fn
    while True:
        outcome = extract_unary(current)
        if isinstance(outcome, UnaryExtraction):
            return outcome, steps
        current = outcome.function
        steps += 1


# ---------------------------------------------------------------------------
# partition lattice and Moebius inversion
# ---------------------------------------------------------------------------

#: Partition-lattice operations are enforced up to this domain size (Bell(6)=203).
MAX_PARTITION_DOMAIN = 6


@dataclass(frozen=True)
class Partition:
    """A set partition of ``{0..q-1}`` in canonical block order."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise InputError("partition blocks must be non-empty")
            if list(block) != sorted(block):
                raise InputError(f"block {block} is not sorted")
            if seen & set(block):
                raise InputError("partition blocks overlap")
            seen.update(block)
        if seen != set(range(len(seen))):
            raise InputError("partition must cover 0..q-1 exactly")
        if list(self.blocks) != sorted(self.blocks, key=lambda b: b[0]):
            raise InputError("blocks must be ordered by first element")

    @property
    def domain_size(self) -> int:
        return sum(len(block) for block in self.blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @staticmethod
    def discrete(size: int) -> "Partition":
        return Partition(tuple((i,) for i in range(size)))

    @staticmethod
    def single_block(size: int) -> "Partition":
        return Partition((tuple(range(size)),))


def _canonical(blocks: list[list[int]]) -> Partition:
    ordered = tuple(tuple(sorted(b)) for b in sorted(blocks, key=lambda b: min(b)))
    return Partition(ordered)


def all_partitions(size: int) -> list[Partition]:
    """Every set partition of ``{0..size-1}``, coarsest-last deterministic order."""
    if size < 1:
        raise InputError(f"partition domain must be non-empty, got {size}")
    if size > MAX_PARTITION_DOMAIN:
        raise Refusal(
            f"partition lattices are enforced up to domain size {MAX_PARTITION_DOMAIN}"
        )
    found: list[list[list[int]]] = [[]]
    for element in range(size):
        updated = []
        for blocks in found:
            for i in range(len(blocks)):
                updated.append([b + [element] if j == i else list(b) for j, b in enumerate(blocks)])
            updated.append([list(b) for b in blocks] + [[element]])
        found = updated
    partitions = [_canonical(blocks) for blocks in found]
    partitions.sort(key=lambda p: (-p.num_blocks, p.blocks))
    return partitions


def refines(finer: Partition, coarser: Partition) -> bool:
    """Whether every block of ``finer`` sits inside one block of ``coarser``."""
    owner: dict[int, int] = {}
    for i, block in enumerate(coarser.blocks):
        for element in block:
            owner[element] = i
    for block in finer.blocks:
        owners = {owner[element] for element in block}
        if len(owners) != 1:
            return False
    return True


def mobius_table(size: int) -> dict[Partition, int]:
    """Moebius numbers over the partition lattice ordered by refinement.

    The all-singletons partition gets 1; every other partition gets minus the
    sum over its strict refinements.  The single-block partition ends up at
    ``(-1)**(size-1) * (size-1)!``.
    """
    partitions = all_partitions(size)
    table: dict[Partition, int] = {}
    for theta in partitions:
        if theta.num_blocks == size:
            table[theta] = 1
            continue
        table[theta] = -sum(
            table[eta]
            for eta in partitions
            if eta.num_blocks > theta.num_blocks and refines(eta, theta)
        )
    return table


def mobius_pinning_reduce(
    instance: Instance,
    evaluator: Evaluator,
    constraint_index: int | None = None,
) -> Fraction:
    """Partition value of an instance with one full-disequality constraint.

    The disequality over q distinct variables is removed by Moebius inversion:
    sum over all partitions of the q slots, merging the scoped variables
    blockwise and weighting each merged instance by its Moebius number.  When
    ``constraint_index`` is omitted the constraint is located by its table,
    and exactly one match is required.
    """
    q = instance.domain_size
    diseq_table = full_disequality(q).table
    if constraint_index is None:
        matches = [
            i
            for i, c in enumerate(instance.constraints)
            if instance.functions[c.function].arity == q
            and instance.functions[c.function].table == diseq_table
        ]
        if len(matches) != 1:
            raise Refusal(
                f"expected exactly one full-disequality constraint, found {len(matches)}"
            )
        constraint_index = matches[0]
    if not 0 <= constraint_index < len(instance.constraints):
        raise InputError(f"constraint index {constraint_index} out of range")
    target = instance.constraints[constraint_index]
    if instance.functions[target.function].table != diseq_table:
        raise Refusal(
            f"constraint {constraint_index} is not the full-disequality function"
        )
    if len(set(target.scope)) != q:
        raise Refusal("the disequality constraint needs q distinct variables")
    base = tuple(
        c for i, c in enumerate(instance.constraints) if i != constraint_index
    )

    table = mobius_table(q)
    total = _ZERO
    for eta in all_partitions(q):
        merge: dict[int, int] = {}
        for block in eta.blocks:
            representative = target.scope[block[0]]
            for slot in block[1:]:
                merge[target.scope[slot]] = representative
        survivors = [v for v in range(instance.num_variables) if v not in merge]
        renumber = {v: i for i, v in enumerate(survivors)}
        constraints = tuple(
            Constraint(
                c.function, tuple(renumber[merge.get(v, v)] for v in c.scope)
            )
            for c in base
        )
        catalog = dict(instance.functions)
        if all(c.function != target.function for c in constraints):
            del catalog[target.function]
        merged_instance = Instance(len(survivors), q, catalog, constraints)
        total += table[eta] * evaluator(merged_instance)
    return total


def is_permutation_symmetric(
    functions: Mapping[str, WeightFunction], domain_size: int
) -> bool:
    """True when every function is invariant under every domain permutation."""
    for fn in functions.values():
        for perm in permutations(range(domain_size)):
            for index, value in enumerate(fn.table):
                x = index_to_tuple(index, fn.arity, domain_size)
                if fn.lookup(tuple(perm[v] for v in x)) != value:
                    return False
    return True


def symmetric_pinning_reduce_q(instance: Instance, evaluator: Evaluator) -> Fraction:
    """Eliminate q-ary value pins from a fully symmetric family.

    All pinned variables collapse onto q representatives tied by one full
    disequality; symmetry makes every distinct labelling contribute equally,
    so the Moebius-evaluated value divided by q! recovers the original.
    """
    q = instance.domain_size
    delta_tables = {
        tuple(_ONE if v == c else _ZERO for v in range(q)): c for c in range(q)
    }
    pin_names = {
        name: delta_tables[fn.table]
        for name, fn in instance.functions.items()
        if fn.arity == 1 and fn.table in delta_tables
    }
    pinned: dict[int, int] = {}
    remaining = []
    for c in instance.constraints:
        if c.function in pin_names:
            value = pin_names[c.function]
            var = c.scope[0]
            if var in pinned and pinned[var] != value:
                return _ZERO
            pinned[var] = value
        else:
            remaining.append(c)
    family = {n: f for n, f in instance.functions.items() if n not in pin_names}
    if not pinned:
        return evaluator(
            Instance(instance.num_variables, q, family, tuple(remaining))
        )
    if not is_permutation_symmetric(family, q):
        raise Refusal(
            "pin elimination over a general domain needs a family symmetric "
            "under all domain permutations"
        )

    free = [v for v in range(instance.num_variables) if v not in pinned]
    renumber = {v: q + i for i, v in enumerate(free)}
    constraints = [
        Constraint(
            c.function,
            tuple(pinned[v] if v in pinned else renumber[v] for v in c.scope),
        )
        for c in remaining
    ]
    diseq_name = _fresh_name("diseq", family)
    catalog = dict(family)
    catalog[diseq_name] = full_disequality(q)
    constraints.append(Constraint(diseq_name, tuple(range(q))))
    expanded = Instance(q + len(free), q, catalog, tuple(constraints))
    # The appended constraint is passed by position: the family itself may
    # contain a disequality-shaped function (e.g. binary inequality at q=2).
    return (
        mobius_pinning_reduce(
            expanded, evaluator, constraint_index=len(constraints) - 1
        )
        / factorial(q)
    )
