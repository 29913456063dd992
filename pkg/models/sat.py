"""
Weighted Max 2-SAT: instances, the Flip neighborhood and exact cost accounting.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from models.errors import ParseError, ValidationError
from models.search import LocalSearchProblem


@dataclass(frozen=True)
class Literal:
    variable_index: int
    negated: bool = False

    def __post_init__(self):
        if self.variable_index < 1:
            raise ValidationError(f"Variable index must be >= 1, got {self.variable_index}")

    def negation(self) -> 'Literal':
        return Literal(self.variable_index, not self.negated)

    def is_satisfied_by(self, assignment: 'Assignment') -> bool:
        return assignment.values[self.variable_index - 1] != self.negated

    def to_dimacs(self) -> int:
        return -self.variable_index if self.negated else self.variable_index

    @classmethod
    def from_dimacs(cls, value: int) -> 'Literal':
        if value == 0:
            raise ValidationError("Literal 0 is the clause terminator, not a literal")
        return cls(abs(value), value < 0)

    def __str__(self):
        return f"~x{self.variable_index}" if self.negated else f"x{self.variable_index}"


@dataclass(frozen=True)
class Clause:
    literals: Tuple[Literal, Literal]
    weight: int

    def __post_init__(self):
        object.__setattr__(self, 'literals', tuple(self.literals))
        if len(self.literals) != 2:
            raise ValidationError(f"A clause needs exactly 2 literals, got {len(self.literals)}")
        if isinstance(self.weight, bool) or not isinstance(self.weight, int) or self.weight < 1:
            raise ValidationError(f"Clause weight must be a positive integer, got {self.weight!r}")
        first, second = self.literals
        if first.variable_index == second.variable_index:
            raise ValidationError(f"Clause ({first} v {second}) uses variable x{first.variable_index} twice")

    @property
    def variables(self) -> Tuple[int, int]:
        return tuple(literal.variable_index for literal in self.literals)

    def contains(self, literal: Literal) -> bool:
        return literal in self.literals

    def is_satisfied_by(self, assignment: 'Assignment') -> bool:
        return any(literal.is_satisfied_by(assignment) for literal in self.literals)

    def __str__(self):
        return f"({self.literals[0]} v {self.literals[1]}, w={self.weight})"


@dataclass(frozen=True)
class Assignment:
    values: Tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(bool(v) for v in self.values))

    @property
    def num_variables(self) -> int:
        return len(self.values)

    @classmethod
    def from_bits(cls, bits: str) -> 'Assignment':
        """Parse a string of 0/1 characters, one per variable"""
        if any(ch not in '01' for ch in bits):
            raise ParseError(f"Assignment must be a string of 0/1 characters, got {bits!r}")
        return cls(tuple(ch == '1' for ch in bits))

    def to_bits(self) -> str:
        return ''.join('1' if v else '0' for v in self.values)

    def flipped(self, variable_index: int) -> 'Assignment':
        values = list(self.values)
        values[variable_index - 1] = not values[variable_index - 1]
        return Assignment(tuple(values))

    def __str__(self):
        return self.to_bits()


@dataclass(frozen=True)
class SatInstance:
    num_variables: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self):
        object.__setattr__(self, 'clauses', tuple(self.clauses))
        if self.num_variables < 1:
            raise ValidationError(f"An instance needs at least one variable, got {self.num_variables}")
        for clause in self.clauses:
            for literal in clause.literals:
                if literal.variable_index > self.num_variables:
                    raise ValidationError(
                        f"Literal {literal} out of range for {self.num_variables} variables")

    @property
    def N(self) -> int:
        return self.num_variables

    @property
    def M(self) -> int:
        return len(self.clauses)

    @property
    def w_max(self) -> int:
        return max((clause.weight for clause in self.clauses), default=0)

    @property
    def w_min(self) -> int:
        return min((clause.weight for clause in self.clauses), default=0)

    @property
    def W(self) -> int:
        return self.M * self.w_max

    @property
    def total_weight(self) -> int:
        return sum(clause.weight for clause in self.clauses)

    def require_reducible(self):
        """Reductions assume at least two clauses"""
        if self.M < 2:
            raise ValidationError(f"Reduction needs M >= 2 clauses, got {self.M}")

    def require_assignment(self, assignment: Assignment):
        if assignment.num_variables != self.num_variables:
            raise ValidationError(
                f"Assignment has {assignment.num_variables} values, instance has {self.num_variables} variables")


# =============================================================================
# WCNF
# =============================================================================

def parse_wcnf(text) -> SatInstance:
    """Parse `p wcnf N M [top]` followed by exactly M lines `w l1 l2 0`"""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as e:
            raise ParseError(f"WCNF input is not UTF-8: {e}")

    header = None
    clauses = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields or fields[0] == 'c':
            continue
        if fields[0] == 'p':
            if header is not None:
                raise ParseError(f"Line {line_number}: second header line")
            header = _parse_header(fields, line_number)
            continue
        if header is None:
            raise ParseError(f"Line {line_number}: clause before the 'p wcnf' header")
        clauses.append(_parse_clause(fields, line_number, header))

    if header is None:
        raise ParseError("Missing 'p wcnf <N> <M>' header")
    num_variables, num_clauses, _top = header
    if len(clauses) != num_clauses:
        raise ParseError(f"Header declares {num_clauses} clauses, found {len(clauses)}")
    return SatInstance(num_variables, tuple(clauses))


def _parse_int(token, line_number, what):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"Line {line_number}: {what} {token!r} is not an integer")


def _parse_header(fields, line_number):
    if len(fields) not in (4, 5) or fields[1] != 'wcnf':
        raise ParseError(f"Line {line_number}: malformed header {' '.join(fields)!r}")
    num_variables = _parse_int(fields[2], line_number, 'variable count')
    num_clauses = _parse_int(fields[3], line_number, 'clause count')
    top = _parse_int(fields[4], line_number, 'top weight') if len(fields) == 5 else None
    if num_variables < 1 or num_clauses < 0:
        raise ParseError(f"Line {line_number}: header counts out of range")
    return num_variables, num_clauses, top


def _parse_clause(fields, line_number, header):
    num_variables, _num_clauses, top = header
    if fields[-1] != '0':
        raise ParseError(f"Line {line_number}: clause must end with 0")
    if len(fields) != 4:
        raise ParseError(f"Line {line_number}: clause must have exactly 2 literals, got {len(fields) - 2}")
    weight = _parse_int(fields[0], line_number, 'weight')
    if weight <= 0:
        raise ParseError(f"Line {line_number}: weight must be >= 1, got {weight}")
    if top is not None and weight >= top:
        raise ParseError(f"Line {line_number}: hard clauses (weight >= top) are not supported")
    values = [_parse_int(token, line_number, 'literal') for token in fields[1:3]]
    for value in values:
        if value == 0 or abs(value) > num_variables:
            raise ParseError(f"Line {line_number}: literal {value} out of range 1..{num_variables}")
    if abs(values[0]) == abs(values[1]):
        raise ParseError(f"Line {line_number}: both literals use variable x{abs(values[0])}")
    return Clause((Literal.from_dimacs(values[0]), Literal.from_dimacs(values[1])), weight)


def serialize_wcnf(instance: SatInstance) -> str:
    lines = [f"p wcnf {instance.num_variables} {instance.M}"]
    for clause in instance.clauses:
        first, second = clause.literals
        lines.append(f"{clause.weight} {first.to_dimacs()} {second.to_dimacs()} 0")
    return '\n'.join(lines) + '\n'


# =============================================================================
# Cost accounting
# =============================================================================

def sat_cost(instance: SatInstance, assignment: Assignment) -> int:
    """Sum of the weights of all satisfied clauses"""
    instance.require_assignment(assignment)
    return sum(clause.weight for clause in instance.clauses if clause.is_satisfied_by(assignment))


def partition_clauses(instance: SatInstance, assignment: Assignment) -> Tuple[List[Clause], List[Clause]]:
    """(satisfied, falsified) clauses, each in instance order"""
    instance.require_assignment(assignment)
    satisfied, falsified = [], []
    for clause in instance.clauses:
        (satisfied if clause.is_satisfied_by(assignment) else falsified).append(clause)
    return satisfied, falsified


def falsified_weight(instance: SatInstance, assignment: Assignment) -> int:
    _satisfied, falsified = partition_clauses(instance, assignment)
    return sum(clause.weight for clause in falsified)


def clauses_with_literal(instance: SatInstance, literal: Literal) -> List[Clause]:
    return [clause for clause in instance.clauses if clause.contains(literal)]


def flip_neighbors(assignment: Assignment) -> List[Assignment]:
    return [assignment.flipped(n) for n in range(1, assignment.num_variables + 1)]


def random_sat_instance(rng, num_variables: int, num_clauses: int, w_cap: int) -> SatInstance:
    """Uniform clause pairs over distinct variables, uniform signs, weights in [1, w_cap]"""
    if num_variables < 2:
        raise ValidationError("Clauses over distinct variables need at least 2 variables")
    if w_cap < 1:
        raise ValidationError(f"w_cap must be >= 1, got {w_cap}")
    clauses = []
    for _ in range(num_clauses):
        first, second = rng.sample(range(1, num_variables + 1), 2)
        literals = (Literal(first, rng.random() < 0.5), Literal(second, rng.random() < 0.5))
        clauses.append(Clause(literals, rng.randint(1, w_cap)))
    return SatInstance(num_variables, tuple(clauses))


class SatFlipProblem(LocalSearchProblem):
    """SAT/Flip: maximize satisfied weight by flipping one variable at a time"""
    name = 'SAT/Flip'
    maximize = True

    def __init__(self, instance: SatInstance):
        self.instance = instance

    def cost(self, solution: Assignment) -> Fraction:
        return Fraction(sat_cost(self.instance, solution))

    def moves(self, solution: Assignment):
        return [(f"flip x{n}", solution.flipped(n)) for n in range(1, solution.num_variables + 1)]

    def is_feasible(self, solution) -> bool:
        return isinstance(solution, Assignment) and solution.num_variables == self.instance.num_variables

    def random_solution(self, rng) -> Assignment:
        return Assignment(tuple(rng.random() < 0.5 for _ in range(self.instance.num_variables)))

    def all_solutions(self):
        for values in itertools.product((False, True), repeat=self.instance.num_variables):
            yield Assignment(values)

    def solution_count(self) -> int:
        return 2 ** self.instance.num_variables

    def describe(self, solution: Assignment) -> str:
        return solution.to_bits()
