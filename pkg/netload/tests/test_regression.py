import json

import numpy as np
from django.test import SimpleTestCase

from netload import regression
from netload.domain import Observation, ParameterVector, ProfileDataset
from netload.exceptions import (
    DimensionMismatch,
    EmptyInput,
    InconsistentDimension,
    InsufficientData,
    ParseError,
    RankDeficient,
    VersionMismatch,
)

GRID = range(4, 33, 4)


def grid_configs():
    return [ParameterVector((m, r)) for m in GRID for r in GRID]


def make_dataset(configs, loads):
    return ProfileDataset(tuple(Observation(c, y) for c, y in zip(configs, loads)), input_bytes=1)


def evaluate_polynomial(coefficients, config, degree):
    """Independent evaluation of the per-parameter polynomial."""
    total = coefficients[0]
    for i, p in enumerate(config.values):
        for j in range(1, degree + 1):
            total += coefficients[1 + i * degree + (j - 1)] * p ** j
    return total


def dense_normal_equations(P, y):
    return np.linalg.inv(P.T @ P) @ P.T @ y


class DesignMatrixTests(SimpleTestCase):

    def test_cubic_row_layout(self):
        design = regression.build_design_matrix([ParameterVector((4, 8))], 3)
        self.assertEqual(design.entries.tolist(), [[1, 4, 16, 64, 8, 64, 512]])
        self.assertEqual((design.rows, design.cols), (1, 7))

    def test_degree_one_collapses_to_linear(self):
        design = regression.build_design_matrix([ParameterVector((2, 3))], 1)
        self.assertEqual(design.entries.tolist(), [[1, 2, 3]])

    def test_empty_configs(self):
        with self.assertRaises(EmptyInput):
            regression.build_design_matrix([], 3)

    def test_mixed_dimensions(self):
        with self.assertRaises(InconsistentDimension):
            regression.build_design_matrix([ParameterVector((2, 3)), ParameterVector((2, 3, 4))], 2)

    def test_entry_invariants(self):
        configs = [ParameterVector((3, 5, 7)), ParameterVector((2, 9, 4))]
        degree = 4
        design = regression.build_design_matrix(configs, degree)
        self.assertEqual(design.cols, 1 + 3 * degree)
        for k, config in enumerate(configs):
            self.assertEqual(design.entries[k, 0], 1)
            for i, p in enumerate(config.values, start=1):
                for j in range(1, degree + 1):
                    self.assertEqual(design.entries[k, design.column(i, j)], p ** j)

    def test_rows_follow_input_order(self):
        configs = [ParameterVector((9, 1)), ParameterVector((1, 9))]
        design = regression.build_design_matrix(configs, 1)
        self.assertEqual(design.entries[:, 1].tolist(), [9, 1])


class FitTests(SimpleTestCase):

    def test_recovers_generating_polynomial(self):
        configs = grid_configs()
        loads = [2 + 3 * c.maps + 0.5 * c.reduces ** 2 for c in configs]
        model = regression.fit(make_dataset(configs, loads), 3)
        np.testing.assert_allclose(model.coefficients, (2, 3, 0, 0, 0, 0.5, 0), rtol=0, atol=1e-6)
        self.assertEqual(model.fit_meta.training_size, 64)

    def test_constant_loads(self):
        configs = grid_configs()
        model = regression.fit(make_dataset(configs, [7.0] * len(configs)), 3)
        np.testing.assert_allclose(model.coefficients, (7, 0, 0, 0, 0, 0, 0), rtol=0, atol=1e-6)

    def test_insufficient_data(self):
        configs = [ParameterVector((4, 4)), ParameterVector((8, 8)), ParameterVector((12, 16))]
        with self.assertRaises(InsufficientData):
            regression.fit(make_dataset(configs, [1.0, 2.0, 3.0]), 3)

    def test_rank_deficiency_is_reported(self):
        # three distinct map counts cannot pin down a cubic in maps
        configs = [ParameterVector((m, r)) for m in (4, 8, 12) for r in GRID]
        loads = [float(m + r) for m, r in (c.values for c in configs)]
        with self.assertRaises(RankDeficient):
            regression.fit(make_dataset(configs, loads), 3)
        with self.assertRaises(RankDeficient):
            regression.fit(make_dataset(configs, loads), 3, standardize=False)

    def test_single_value_parameter_is_rank_deficient(self):
        configs = [ParameterVector((8, r)) for r in range(1, 20)]
        with self.assertRaises(RankDeficient):
            regression.fit(make_dataset(configs, [float(r) for r in range(1, 20)]), 2)

    def test_exact_recovery_of_random_coefficients(self):
        rng = np.random.default_rng(7)
        configs = grid_configs()
        for _ in range(10):
            truth = rng.uniform(0, 5, size=7)
            loads = [evaluate_polynomial(truth, c, 3) for c in configs]
            model = regression.fit(make_dataset(configs, loads), 3)
            np.testing.assert_allclose(model.coefficients, truth, rtol=0, atol=1e-6)

    def test_raw_basis_solver_agrees(self):
        rng = np.random.default_rng(3)
        configs = grid_configs()
        truth = rng.uniform(0, 5, size=7)
        loads = [evaluate_polynomial(truth, c, 3) * (1 + rng.normal(0, 0.01)) for c in configs]
        dataset = make_dataset(configs, loads)
        scaled = regression.fit(dataset, 3)
        raw = regression.fit(dataset, 3, standardize=False)
        self.assertFalse(raw.fit_meta.standardized)
        np.testing.assert_allclose(scaled.coefficients, raw.coefficients, rtol=1e-6, atol=1e-6)

    def test_matches_dense_normal_equations(self):
        rng = np.random.default_rng(2024)
        box = [(m, r) for m in range(1, 13) for r in range(1, 13)]
        for _ in range(50):
            picks = rng.choice(len(box), size=64, replace=False)
            configs = [ParameterVector(box[i]) for i in picks]
            truth = np.concatenate([[rng.uniform(100, 1000)], rng.uniform(1, 10, size=4)])
            loads = [evaluate_polynomial(truth, c, 2) * (1 + rng.normal(0, 0.01)) for c in configs]
            dataset = make_dataset(configs, loads)

            model = regression.fit(dataset, 2)
            self.assertLess(model.fit_meta.condition_number, 1e8)
            P = regression.build_design_matrix(configs, 2).entries
            oracle = dense_normal_equations(P, np.array(dataset.loads))
            np.testing.assert_allclose(model.coefficients, oracle, rtol=1e-6,
                                       atol=1e-8 * np.abs(oracle).max())

    def test_residuals_are_orthogonal_to_columns(self):
        rng = np.random.default_rng(11)
        configs = grid_configs()
        loads = [1e6 + 4e4 * c.maps * c.reduces * (1 + rng.normal(0, 0.05)) for c in configs]
        dataset = make_dataset(configs, loads)
        model = regression.fit(dataset, 3)
        P = regression.build_design_matrix(configs, 3).entries
        y = np.array(dataset.loads)
        gradient = P.T @ (y - P @ np.array(model.coefficients))
        self.assertLessEqual(np.linalg.norm(gradient), 1e-6 * np.linalg.norm(P.T @ y))
        expected_rss = float(np.sum((y - P @ np.array(model.coefficients)) ** 2))
        self.assertAlmostEqual(model.fit_meta.rss, expected_rss, delta=1e-9 * expected_rss)

    def test_observation_order_does_not_matter(self):
        rng = np.random.default_rng(5)
        configs = grid_configs()
        loads = [500 + 3 * c.maps ** 2 + 20 * c.reduces + rng.normal(0, 10) for c in configs]
        base = regression.fit(make_dataset(configs, loads), 3)
        order = rng.permutation(len(configs))
        shuffled = regression.fit(make_dataset([configs[i] for i in order], [loads[i] for i in order]), 3)
        np.testing.assert_allclose(shuffled.coefficients, base.coefficients, rtol=1e-9, atol=1e-9)


class PredictTests(SimpleTestCase):

    def test_intercept_only(self):
        model = regression.PolynomialModel(3, 2, (5, 0, 0, 0, 0, 0, 0))
        self.assertEqual(regression.predict(model, ParameterVector((17, 29))), 5.0)

    def test_single_linear_term(self):
        model = regression.PolynomialModel(3, 2, (0, 1, 0, 0, 0, 0, 0))
        self.assertEqual(regression.predict(model, ParameterVector((7, 13))), 7.0)

    def test_hand_evaluated_model(self):
        model = regression.PolynomialModel(3, 2, (2, 3, 0, 0, 0, 0.5, 0))
        self.assertEqual(regression.predict(model, ParameterVector((10, 4))), 40.0)

    def test_is_inner_product_with_design_row(self):
        rng = np.random.default_rng(1)
        model = regression.PolynomialModel(3, 2, tuple(rng.normal(size=7)))
        for values in [(1, 1), (4, 29), (32, 5), (17, 17)]:
            config = ParameterVector(values)
            row = regression.build_design_matrix([config], 3).entries[0]
            self.assertEqual(regression.predict(model, config), float(row @ np.array(model.coefficients)))
            self.assertAlmostEqual(regression.predict(model, config),
                                   evaluate_polynomial(model.coefficients, config, 3), places=6)

    def test_dimension_mismatch(self):
        model = regression.PolynomialModel(3, 2, (5, 0, 0, 0, 0, 0, 0))
        with self.assertRaises(DimensionMismatch):
            regression.predict(model, ParameterVector((4, 4, 4)))


class ModelDocumentTests(SimpleTestCase):

    def fitted(self):
        configs = grid_configs()
        loads = [1e7 / 3 + 12345.678 * c.maps + 0.1 * c.reduces ** 3 for c in configs]
        return regression.fit(make_dataset(configs, loads), 3)

    def test_round_trip_is_bit_exact(self):
        model = regression.PolynomialModel(3, 2, (2, 3, 0, 0, 0, 0.5, 0))
        self.assertEqual(regression.load_model(regression.save_model(model)), model)
        fitted = self.fitted()
        loaded = regression.load_model(regression.save_model(fitted, workload='wordcount-like'))
        self.assertEqual(loaded, fitted)
        self.assertEqual([c.hex() for c in loaded.coefficients], [c.hex() for c in fitted.coefficients])

    def test_document_fields(self):
        document = json.loads(regression.save_model(self.fitted()))
        self.assertEqual(document['version'], regression.DOCUMENT_VERSION)
        self.assertEqual(document['param_names'], ['maps', 'reduces'])
        self.assertEqual(document['fit_meta']['training_size'], 64)

    def test_hex_coefficients_are_accepted(self):
        document = json.loads(regression.save_model(regression.PolynomialModel(1, 2, (0.1, 2.5, 3))))
        document['coefficients'] = [(0.1).hex(), 2.5, (3.0).hex()]
        model = regression.load_model(json.dumps(document))
        self.assertEqual(model.coefficients, (0.1, 2.5, 3.0))

    def test_missing_degree(self):
        document = json.loads(regression.save_model(self.fitted()))
        del document['degree']
        with self.assertRaises(ParseError) as ctx:
            regression.load_model(json.dumps(document, indent=2))
        self.assertEqual(ctx.exception.field, 'degree')

    def test_arity_violation(self):
        document = json.loads(regression.save_model(self.fitted()))
        document['coefficients'] = document['coefficients'][:5]
        with self.assertRaises(ParseError) as ctx:
            regression.load_model(json.dumps(document, indent=2))
        self.assertEqual(ctx.exception.field, 'coefficients')
        self.assertIn('arity', str(ctx.exception))
        self.assertIsNotNone(ctx.exception.line)

    def test_version_mismatch(self):
        document = json.loads(regression.save_model(self.fitted()))
        document['version'] = 99
        with self.assertRaises(VersionMismatch):
            regression.load_model(json.dumps(document))

    def test_syntax_error_reports_line(self):
        with self.assertRaises(ParseError) as ctx:
            regression.load_model('{\n  "version": 1,\n  "degree": ,\n}')
        self.assertEqual(ctx.exception.line, 3)
