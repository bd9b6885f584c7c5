"""Prediction-accuracy metrics: MAPE, PRED(25), RMSE and R².

MAPE is reported in percent. PRED(25) counts relative errors strictly below
0.25. R² is not clamped and goes negative for fits worse than the mean.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateActuals, EmptyInput, LengthMismatch, ZeroActual
from . import regression

logger = logging.getLogger(__name__)

PRED_THRESHOLD = 0.25


def _pair(actual, predicted):
    a = np.asarray(actual, dtype=float)
    p = np.asarray(predicted, dtype=float)
    if a.ndim != 1 or a.shape != p.shape:
        raise LengthMismatch(f"actual has {a.size} values, predicted has {p.size}")
    if a.size == 0:
        raise LengthMismatch('metrics need at least one observation')
    return a, p


def relative_errors(actual, predicted):
    a, p = _pair(actual, predicted)
    if np.any(a == 0):
        raise ZeroActual('relative error is undefined where the actual load is 0')
    return np.abs(a - p) / a


def mape(actual, predicted):
    return float(100.0 * np.mean(relative_errors(actual, predicted)))


def pred25(actual, predicted):
    return float(np.mean(relative_errors(actual, predicted) < PRED_THRESHOLD))


def rmse(actual, predicted):
    a, p = _pair(actual, predicted)
    return float(np.sqrt(np.mean((a - p) ** 2)))


def r_squared(actual, predicted):
    a, p = _pair(actual, predicted)
    if a.size < 2:
        raise DegenerateActuals('R² needs at least two observations')
    ss_tot = float(np.sum((a - a.mean()) ** 2))
    if ss_tot == 0:
        raise DegenerateActuals('actual loads have zero variance')
    ss_res = float(np.sum((a - p) ** 2))
    return 1.0 - ss_res / ss_tot


@dataclass(frozen=True)
class Residual:
    config: object
    actual: float
    predicted: float
    relative_error: float


@dataclass(frozen=True)
class EvaluationReport:
    mape: float
    pred25: float
    rmse: float
    r_squared: float
    residuals: tuple

    @property
    def m(self):
        return len(self.residuals)

    def to_dict(self):
        return {
            'm': self.m,
            'rmse': self.rmse,
            'mape': self.mape,
            'r_squared': self.r_squared,
            'pred25': self.pred25,
            'residuals': [
                {
                    'index': i,
                    'config': list(r.config.values),
                    'actual': r.actual,
                    'predicted': r.predicted,
                    'relative_error': r.relative_error,
                }
                for i, r in enumerate(self.residuals, start=1)
            ],
        }


def evaluate(model, test):
    if not len(test):
        raise EmptyInput('test dataset is empty')
    actual = test.loads
    predicted = regression.predict_many(model, test.configs)
    errors = relative_errors(actual, predicted)
    report = EvaluationReport(
        mape=mape(actual, predicted),
        pred25=pred25(actual, predicted),
        rmse=rmse(actual, predicted),
        r_squared=r_squared(actual, predicted),
        residuals=tuple(
            Residual(config=c, actual=a, predicted=p, relative_error=float(e))
            for c, a, p, e in zip(test.configs, actual, predicted, errors)
        ),
    )
    logger.info("evaluated %d observations: mape=%.3f pred25=%.3f rmse=%.6g r2=%.4f",
                report.m, report.mape, report.pred25, report.rmse, report.r_squared)
    return report


TABLE_COLUMNS = ('RMSD', 'MAPE', 'R^2 prediction accuracy', 'PRED')


def render_table(reports):
    """Text table with one row per application, columns as in the results table."""
    names = list(reports)
    width = max([len('Application')] + [len(n) for n in names])
    header = 'Application'.ljust(width) + ''.join(f"  {c:>24}" for c in TABLE_COLUMNS)
    lines = [header, '-' * len(header)]
    for name in names:
        r = reports[name]
        cells = (f"{r.rmse:.6g}", f"{r.mape:.2f}", f"{r.r_squared:.2f}", f"{r.pred25:.2f}")
        lines.append(name.ljust(width) + ''.join(f"  {c:>24}" for c in cells))
    return '\n'.join(lines) + '\n'
