import random
import unittest
from fractions import Fraction

from models.errors import ParseError, ValidationError
from models.sat import (
    Assignment,
    Clause,
    Literal,
    SatFlipProblem,
    SatInstance,
    clauses_with_literal,
    falsified_weight,
    flip_neighbors,
    parse_wcnf,
    partition_clauses,
    random_sat_instance,
    sat_cost,
    serialize_wcnf,
)

TINY1 = "p wcnf 2 2\n1 1 2 0\n1 -1 2 0\n"


class TestLiteral(unittest.TestCase):
    """Tests for Literal"""

    def test_dimacs_conversion(self):
        """Should map to and from signed DIMACS integers"""
        self.assertEqual(Literal.from_dimacs(-3), Literal(3, True))
        self.assertEqual(Literal(2).to_dimacs(), 2)
        self.assertEqual(Literal(2, True).to_dimacs(), -2)

    def test_zero_rejected(self):
        """0 is not a literal"""
        with self.assertRaises(ValidationError):
            Literal.from_dimacs(0)

    def test_index_must_be_positive(self):
        """Variable index below 1 should raise"""
        with self.assertRaises(ValidationError):
            Literal(0)

    def test_negation_and_str(self):
        """Negation flips the sign; labels are x1 / ~x1"""
        self.assertEqual(Literal(1).negation(), Literal(1, True))
        self.assertEqual(str(Literal(1)), 'x1')
        self.assertEqual(str(Literal(1, True)), '~x1')


class TestClause(unittest.TestCase):
    """Tests for Clause"""

    def test_same_variable_rejected(self):
        """Both literals over one variable should raise"""
        with self.assertRaises(ValidationError):
            Clause((Literal(1), Literal(1, True)), 1)

    def test_weight_must_be_positive(self):
        """Weights below 1 should raise"""
        for weight in (0, -2):
            with self.subTest(weight=weight):
                with self.assertRaises(ValidationError):
                    Clause((Literal(1), Literal(2)), weight)

    def test_satisfaction(self):
        """A clause holds if either literal holds"""
        clause = Clause((Literal(1, True), Literal(2)), 3)
        self.assertTrue(clause.is_satisfied_by(Assignment((False, False))))
        self.assertFalse(clause.is_satisfied_by(Assignment((True, False))))


class TestParseWcnf(unittest.TestCase):
    """Tests for parse_wcnf()"""

    def test_tiny_instance(self):
        """Should transcribe clauses in file order"""
        sat = parse_wcnf(TINY1)
        self.assertEqual(sat.num_variables, 2)
        self.assertEqual(sat.M, 2)
        self.assertEqual(sat.clauses[0], Clause((Literal(1), Literal(2)), 1))
        self.assertEqual(sat.clauses[1], Clause((Literal(1, True), Literal(2)), 1))

    def test_comments_and_bytes(self):
        """Comment lines are skipped and bytes are decoded"""
        sat = parse_wcnf(b"c generated\np wcnf 2 2\nc mid\n1 1 2 0\n1 -1 2 0\n")
        self.assertEqual(sat.M, 2)

    def test_optional_top(self):
        """A top value is accepted when every weight stays below it"""
        sat = parse_wcnf("p wcnf 2 1 10\n9 1 -2 0\n")
        self.assertEqual(sat.clauses[0].weight, 9)
        with self.assertRaises(ParseError):
            parse_wcnf("p wcnf 2 1 10\n10 1 -2 0\n")

    def test_malformed_inputs(self):
        """Every malformed input should raise ParseError"""
        cases = [
            ("missing header", "1 1 2 0\n"),
            ("bad header", "p cnf 2 1\n1 1 2 0\n"),
            ("three literals", "p wcnf 3 1\n1 1 2 3 0\n"),
            ("one literal", "p wcnf 2 1\n1 1 0\n"),
            ("zero weight", "p wcnf 2 1\n0 1 2 0\n"),
            ("out of range", "p wcnf 2 1\n1 1 3 0\n"),
            ("single variable", "p wcnf 2 1\n1 1 -1 0\n"),
            ("wrong count", "p wcnf 2 3\n1 1 2 0\n"),
            ("no terminator", "p wcnf 2 1\n1 1 2\n"),
            ("not a number", "p wcnf 2 1\nw 1 2 0\n"),
        ]
        for name, text in cases:
            with self.subTest(name):
                with self.assertRaises(ParseError):
                    parse_wcnf(text)

    def test_serialize_is_canonical(self):
        """Serialization emits the exact header and clause form"""
        text = "c comment\np wcnf 3 2\n4 1 -3 0\n2 -2 3 0\n"
        self.assertEqual(serialize_wcnf(parse_wcnf(text)), "p wcnf 3 2\n4 1 -3 0\n2 -2 3 0\n")


class TestSatInstance(unittest.TestCase):
    """Tests for SatInstance accessors"""

    def test_weights(self):
        """w_max, w_min, W and the total weight"""
        sat = parse_wcnf("p wcnf 3 3\n4 1 2 0\n1 -1 3 0\n2 2 -3 0\n")
        self.assertEqual(sat.w_max, 4)
        self.assertEqual(sat.w_min, 1)
        self.assertEqual(sat.W, 12)
        self.assertEqual(sat.total_weight, 7)

    def test_literal_out_of_range(self):
        """Literals beyond N should raise"""
        with self.assertRaises(ValidationError):
            SatInstance(1, (Clause((Literal(1), Literal(2)), 1),))

    def test_reduction_needs_two_clauses(self):
        """M < 2 is rejected before any reduction"""
        with self.assertRaises(ValidationError):
            parse_wcnf("p wcnf 2 1\n1 1 2 0\n").require_reducible()


class TestSatCost(unittest.TestCase):
    """Tests for sat_cost() and friends"""

    def setUp(self):
        self.sat = parse_wcnf(TINY1)

    def test_all_assignments(self):
        """Satisfied weight of each assignment of the tiny instance"""
        expected = {'00': 1, '01': 2, '10': 1, '11': 2}
        for bits, weight in expected.items():
            with self.subTest(bits=bits):
                self.assertEqual(sat_cost(self.sat, Assignment.from_bits(bits)), weight)

    def test_partition_and_falsified(self):
        """Satisfied and falsified clauses split the weight"""
        assignment = Assignment.from_bits('00')
        satisfied, falsified = partition_clauses(self.sat, assignment)
        self.assertEqual(len(satisfied), 1)
        self.assertEqual(len(falsified), 1)
        self.assertEqual(falsified_weight(self.sat, assignment), 1)

    def test_length_mismatch(self):
        """An assignment of the wrong length should raise"""
        with self.assertRaises(ValidationError):
            sat_cost(self.sat, Assignment.from_bits('1'))

    def test_clauses_with_literal(self):
        """x2 occurs in both clauses, ~x2 in none"""
        self.assertEqual(len(clauses_with_literal(self.sat, Literal(2))), 2)
        self.assertEqual(clauses_with_literal(self.sat, Literal(2, True)), [])

    def test_flip_neighbors(self):
        """One neighbor per variable"""
        neighbors = flip_neighbors(Assignment.from_bits('101'))
        self.assertEqual([a.to_bits() for a in neighbors], ['001', '111', '100'])


class TestSatProperties(unittest.TestCase):
    """Seeded properties of partition_clauses(), flip_neighbors() and the WCNF text form"""

    def setUp(self):
        rng = random.Random(2024)
        self.cases = []
        for _ in range(25):
            N = rng.randint(2, 6)
            sat = random_sat_instance(rng, N, rng.randint(1, 10), 9)
            self.cases.append((sat, Assignment(tuple(rng.random() < 0.5 for _ in range(N)))))

    def test_partition_is_consistent(self):
        """Satisfied and falsified clauses cover the instance in order and split its weight"""
        for index, (sat, assignment) in enumerate(self.cases):
            with self.subTest(case=index):
                satisfied, falsified = partition_clauses(sat, assignment)
                self.assertTrue(all(clause.is_satisfied_by(assignment) for clause in satisfied))
                self.assertFalse(any(clause.is_satisfied_by(assignment) for clause in falsified))
                self.assertEqual(len(satisfied) + len(falsified), sat.M)
                self.assertEqual(satisfied, [c for c in sat.clauses if c in satisfied])
                self.assertEqual(sat_cost(sat, assignment), sum(c.weight for c in satisfied))
                self.assertEqual(sat_cost(sat, assignment) + falsified_weight(sat, assignment), sat.total_weight)

    def test_flip_neighborhood_is_symmetric(self):
        """T' neighbors T exactly when T neighbors T', differing in one variable"""
        for index, (_sat, assignment) in enumerate(self.cases):
            with self.subTest(case=index):
                neighbors = flip_neighbors(assignment)
                self.assertEqual(len(set(neighbors)), assignment.num_variables)
                for neighbor in neighbors:
                    self.assertIn(assignment, flip_neighbors(neighbor))
                    differing = sum(a != b for a, b in zip(assignment.values, neighbor.values))
                    self.assertEqual(differing, 1)

    def test_text_form_rebuilds_instance(self):
        """Parsing the serialized text gives the same instance"""
        for index, (sat, _assignment) in enumerate(self.cases):
            with self.subTest(case=index):
                self.assertEqual(parse_wcnf(serialize_wcnf(sat)), sat)


class TestRandomSatInstance(unittest.TestCase):
    """Tests for random_sat_instance()"""

    def test_seeded_and_within_bounds(self):
        """Same seed gives the same instance; weights stay in [1, w_cap]"""
        first = random_sat_instance(random.Random(7), 4, 6, 9)
        second = random_sat_instance(random.Random(7), 4, 6, 9)
        self.assertEqual(first, second)
        for clause in first.clauses:
            self.assertTrue(1 <= clause.weight <= 9)
            self.assertNotEqual(*clause.variables)

    def test_needs_two_variables(self):
        """A single variable cannot form a clause over distinct variables"""
        with self.assertRaises(ValidationError):
            random_sat_instance(random.Random(0), 1, 2, 3)


class TestSatFlipProblem(unittest.TestCase):
    """Tests for SatFlipProblem"""

    def test_problem_surface(self):
        """Maximization with 2^N solutions and exact costs"""
        problem = SatFlipProblem(parse_wcnf(TINY1))
        self.assertTrue(problem.maximize)
        self.assertEqual(problem.solution_count(), 4)
        self.assertEqual(len(list(problem.all_solutions())), 4)
        self.assertEqual(problem.cost(Assignment.from_bits('11')), Fraction(2))
        self.assertEqual([move for move, _ in problem.moves(Assignment.from_bits('00'))], ['flip x1', 'flip x2'])


if __name__ == '__main__':
    unittest.main()
