'''
kscolor.py
author(s): ksquant developers

Kochen-Specker colorability of finite vector sets.

A valuation assigns 0 or 1 to every vector so that each orthonormal basis
contains exactly one 1 and a vector keeps its value in every basis it
belongs to. search_valuation decides whether such a valuation exists by
backtracking with unit propagation:

- a basis holding a 1 forces its other members to 0
- a basis with a single unassigned member and no 1 forces that member to 1

Branching happens on the first basis without a 1, lowest vector index first.

'''

import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
import numpy as np
from ksquant.constants import BUNDLED_VECTOR_SETS, ORTHOGONALITY_TOL, UNIT_NORM_TOL
from ksquant.generic_classes import KSQuantError, ValuationError, VectorSetError, VectorSetWarning
from ksquant.parsing import extract_data
from ksquant.symcore import to_fraction

# brute force enumeration limit
MAX_BRUTE_FORCE_VECTORS = 20


@dataclass(frozen=True)
class VectorSet:
    '''Rays in a real vector space

    Attributes
    ----------
    dim: int
    field: str
        "rational" (exact components, orthogonality decided exactly) or "float"
    vectors: tuple
        component tuples; rational rays keep their given representative
    labels: tuple
    scales: tuple
        squared norm of each rational representative, 1 for float vectors
    '''
    dim: int
    field: str
    vectors: tuple
    labels: tuple
    scales: tuple = ()

    def __len__(self) -> int:
        return len(self.vectors)

    def is_orthogonal(self, first: int, second: int, tol: float = ORTHOGONALITY_TOL) -> bool:
        dot = sum(a * b for a, b in zip(self.vectors[first], self.vectors[second]))
        if self.field == "rational":
            return dot == 0
        return abs(dot) <= tol

    def transformed(self, matrix) -> 'VectorSet':
        '''Apply a linear map (rows of Fractions or floats) to every vector'''
        vectors = tuple(
            tuple(sum(row[col] * vector[col] for col in range(self.dim)) for row in matrix)
            for vector in self.vectors
            )
        return VectorSet(self.dim, self.field, vectors, self.labels, self.scales)


def _parallel(first: tuple, second: tuple, exact: bool) -> bool:
    if exact:
        return all(first[i] * second[j] == first[j] * second[i]
                   for i in range(len(first)) for j in range(i + 1, len(first)))
    return abs(float(np.dot(first, second))) >= 1 - UNIT_NORM_TOL


def vector_set_from_dict(data: dict) -> VectorSet:
    '''Validate a vector-set description

    Raises
    ------
    VectorSetError
        on schema violations, zero vectors or non-unit float vectors

    Warns
    -----
    VectorSetWarning
        for deduplicated rays and 2-dimensional sets
    '''
    if not isinstance(data, dict):
        raise VectorSetError("vector set must be a json object")
    for key in ("dim", "field", "vectors"):
        if key not in data:
            raise VectorSetError(f"vector set is missing '{key}'")
    dim = data["dim"]
    if type(dim) is not int or dim < 2:
        raise VectorSetError(f"dim must be an integer >= 2, got {dim!r}")
    if dim == 2:
        warnings.warn("2-dimensional sets are always colorable", VectorSetWarning, stacklevel=2)
    field_name = data["field"]
    if field_name not in ("rational", "float"):
        raise VectorSetError(f"field must be 'rational' or 'float', got {field_name!r}")
    if type(data["vectors"]) is not list:
        raise VectorSetError("vectors must be a list")
    normalize = data.get("normalized", True) is False
    exact = field_name == "rational"

    vectors, labels, scales = [], [], []
    for index, entry in enumerate(data["vectors"]):
        if type(entry) is not dict or "components" not in entry:
            raise VectorSetError(f"vector {index} needs 'components'")
        label = str(entry.get("label", f"v{index + 1}"))
        components = entry["components"]
        if type(components) is not list or len(components) != dim:
            raise VectorSetError(f"vector {label} must have {dim} components")
        if exact:
            try:
                vector = tuple(to_fraction(component) for component in components)
            except (TypeError, ValueError, ZeroDivisionError):
                raise VectorSetError(f"vector {label} has a non-rational component")
            scale = sum(component ** 2 for component in vector)
        else:
            try:
                vector = tuple(float(component) for component in components)
            except (TypeError, ValueError):
                raise VectorSetError(f"vector {label} has a non-numeric component")
            norm = float(np.linalg.norm(vector))
            if normalize and norm > 0:
                vector = tuple(component / norm for component in vector)
            elif abs(norm - 1) > UNIT_NORM_TOL:
                raise VectorSetError(f"vector {label} has norm {norm:.6g}, not 1")
            scale = 1
        if scale == 0:
            raise VectorSetError(f"vector {label} is zero")
        duplicate = next((other for other, kept in enumerate(vectors) if _parallel(kept, vector, exact)), None)
        if duplicate is not None:
            warnings.warn(f"vector {label} spans the same ray as {labels[duplicate]}; dropped",
                          VectorSetWarning, stacklevel=2)
            continue
        vectors.append(vector)
        labels.append(label)
        scales.append(scale if exact else 1)
    return VectorSet(dim, field_name, tuple(vectors), tuple(labels), tuple(scales))


def resolve_vector_set_path(path) -> Path:
    '''Find a vector-set file: an existing path, or a bundled set
    named like "ks18-d4" or "data/ks18-d4"'''
    candidate = Path(path)
    if candidate.is_file():
        return candidate
    if candidate.with_suffix(".json").is_file():
        return candidate.with_suffix(".json")
    if candidate.stem in BUNDLED_VECTOR_SETS:
        return Path(str(resources.files("ksquant") / "data" / f"{candidate.stem}.json"))
    raise VectorSetError(f"Vector set file not found: {path}")


def load_vector_set(path) -> VectorSet:
    '''Load and validate a vector-set json file'''
    resolved = resolve_vector_set_path(path)
    try:
        data = extract_data(resolved)
    except ValueError as error:
        raise VectorSetError(f"{resolved} is not valid json: {error}")
    return vector_set_from_dict(data)


@dataclass(frozen=True)
class BasisList:
    '''Orthonormal bases of a vector set as sorted index tuples'''
    bases: tuple
    dim: int
    labels: tuple = ()

    def __len__(self) -> int:
        return len(self.bases)

    def vertices(self) -> list[int]:
        return sorted({index for basis in self.bases for index in basis})

    def containing(self) -> dict[int, list[int]]:
        '''vector index -> indices of the bases holding it'''
        membership = {index: [] for index in self.vertices()}
        for number, basis in enumerate(self.bases):
            for index in basis:
                membership[index].append(number)
        return membership

    def subset(self, keep) -> 'BasisList':
        return BasisList(tuple(self.bases[number] for number in keep), self.dim, self.labels)


def find_bases(vs: VectorSet, tol: float = ORTHOGONALITY_TOL) -> BasisList:
    '''All sets of dim mutually orthogonal vectors, in lexicographic order

    Parameters
    ----------
    vs : VectorSet
    tol : float, optional
        orthogonality tolerance for float sets; rational sets are decided exactly
    '''
    if tol <= 0:
        raise KSQuantError("tolerance must be positive")
    count = len(vs)
    neighbours = [
        {other for other in range(count) if other != index and vs.is_orthogonal(index, other, tol)}
        for index in range(count)
        ]
    bases = []

    def extend(clique: tuple, candidates: list[int]):
        if len(clique) == vs.dim:
            bases.append(clique)
            return
        for position, index in enumerate(candidates):
            extend(clique + (index,), [other for other in candidates[position + 1:] if other in neighbours[index]])

    extend((), list(range(count)))
    return BasisList(tuple(bases), vs.dim, vs.labels)


def drop_basis(bl: BasisList, k: int) -> BasisList:
    '''Remove basis number k'''
    if not 0 <= k < len(bl):
        raise KSQuantError(f"basis {k} does not exist; there are {len(bl)} bases")
    return bl.subset(number for number in range(len(bl)) if number != k)


@dataclass(frozen=True)
class Valuation:
    '''Value 0 or 1 for each vector index'''
    values: dict

    def ones(self) -> list[int]:
        return sorted(index for index, value in self.values.items() if value == 1)


@dataclass(frozen=True)
class Verdict:
    '''Outcome of the colorability search

    Attributes
    ----------
    colorable: bool
    witness: Valuation | None
        a valuation satisfying every basis, when colorable
    nodes_explored: int
        branch decisions made by the search
    contradiction_core: tuple | None
        basis numbers of a subset that is already uncolorable and in
        which every basis is needed, when not colorable
    '''
    colorable: bool
    witness: Valuation | None = None
    nodes_explored: int = 0
    contradiction_core: tuple | None = None
    bases: int = 0

    def as_dict(self, labels: tuple = ()) -> dict:
        result = {
            "colorable": self.colorable,
            "bases": self.bases,
            "nodes_explored": self.nodes_explored,
            "witness": None,
            "contradiction_core": None if self.contradiction_core is None else list(self.contradiction_core),
        }
        if self.witness is not None:
            result["witness"] = {
                (labels[index] if index < len(labels) else str(index)): value
                for index, value in sorted(self.witness.values.items())
            }
        return result


class ValuationSearch():
    '''Backtracking search over one BasisList

    Attributes
    ----------
    nodes_explored: int
        count of branch decisions
    '''
    def __init__(self, bl: BasisList):
        self.bl = bl
        self.membership = bl.containing()
        self.nodes_explored = 0

    def run(self) -> dict | None:
        values = self.__propagate({}, list(range(len(self.bl))))
        if values is None:
            return None
        return self.__search(values)

    def __search(self, values: dict) -> dict | None:
        open_basis = next((basis for basis in self.bl.bases if not any(values.get(i) == 1 for i in basis)), None)
        if open_basis is None:
            return values
        for index in open_basis:
            if index in values:
                continue
            self.nodes_explored += 1
            trial = dict(values)
            trial[index] = 1
            trial = self.__propagate(trial, self.membership[index])
            if trial is None:
                continue
            result = self.__search(trial)
            if result is not None:
                return result
        return None

    def __propagate(self, values: dict, pending: list[int]) -> dict | None:
        '''Apply forced assignments until nothing changes; None on contradiction'''
        queue = list(pending)
        while queue:
            basis = self.bl.bases[queue.pop(0)]
            ones = [index for index in basis if values.get(index) == 1]
            unknown = [index for index in basis if index not in values]
            if len(ones) > 1:
                return None
            forced = {}
            if len(ones) == 1:
                forced = {index: 0 for index in unknown}
            elif not unknown:
                return None
            elif len(unknown) == 1:
                forced = {unknown[0]: 1}
            for index, value in forced.items():
                values[index] = value
                queue.extend(self.membership[index])
        return values


def search_valuation(bl: BasisList, find_core: bool = True) -> Verdict:
    '''Decide whether a KS valuation exists for the bases

    Parameters
    ----------
    bl : BasisList
        non-empty
    find_core : bool, optional
        shrink an uncolorable set to a core by greedy basis deletion

    Returns
    -------
    Verdict
    '''
    if len(bl) == 0:
        raise KSQuantError("search_valuation needs at least one basis")
    search = ValuationSearch(bl)
    values = search.run()
    if values is not None:
        witness = Valuation(dict(sorted(values.items())))
        if not verify_valuation(witness, bl):
            raise ValuationError("search produced an invalid witness")
        return Verdict(True, witness, search.nodes_explored, None, len(bl))
    core = contradiction_core(bl) if find_core else None
    return Verdict(False, None, search.nodes_explored, core, len(bl))


def contradiction_core(bl: BasisList) -> tuple:
    '''Greedy deletion: drop each basis in turn while the rest stays uncolorable'''
    core = list(range(len(bl)))
    for number in range(len(bl)):
        trial = [kept for kept in core if kept != number]
        if trial and ValuationSearch(bl.subset(trial)).run() is None:
            core = trial
    return tuple(core)


def verify_valuation(v: Valuation | dict, bl: BasisList) -> bool:
    '''True iff every basis holds exactly one 1

    Raises
    ------
    ValuationError
        if a vector of the bases has no value or a value other than 0 and 1
    '''
    values = v.values if isinstance(v, Valuation) else v
    for index in bl.vertices():
        if values.get(index) not in (0, 1):
            raise ValuationError(f"valuation has no 0/1 value for vector {index}")
    return all(sum(values[index] for index in basis) == 1 for basis in bl.bases)


def _assignment_table(bl: BasisList) -> tuple[np.ndarray, list[list[int]]]:
    vertices = bl.vertices()
    if len(vertices) > MAX_BRUTE_FORCE_VECTORS:
        raise KSQuantError(f"brute force is limited to {MAX_BRUTE_FORCE_VECTORS} vectors")
    column = {index: position for position, index in enumerate(vertices)}
    codes = np.arange(2 ** len(vertices), dtype=np.int64)
    table = ((codes[:, np.newaxis] >> np.arange(len(vertices))) & 1).astype(np.uint8)
    return table, [[column[index] for index in basis] for basis in bl.bases]


def _satisfying(bl: BasisList) -> np.ndarray:
    table, columns = _assignment_table(bl)
    valid = np.ones(table.shape[0], dtype=bool)
    for basis_columns in columns:
        valid &= table[:, basis_columns].sum(axis=1) == 1
    return valid


def brute_force_colorable(bl: BasisList) -> bool:
    '''Exhaustive check over all 0/1 assignments (at most 20 vectors)'''
    return bool(np.any(_satisfying(bl)))


def count_witnesses(bl: BasisList) -> int:
    '''Number of valid valuations (at most 20 vectors)'''
    return int(np.count_nonzero(_satisfying(bl)))
