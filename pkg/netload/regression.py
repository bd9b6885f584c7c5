"""Per-parameter polynomial model of shuffle load.

Each experiment k contributes one row ``[1, p1, p1**2, ..., p1**d, ..., pN, ..., pN**d]``
of the design matrix P, and the load is approximated by ``P @ A`` for a
coefficient vector A of length ``1 + N*d``. There are no cross terms between
parameters.

The solver factors a column-standardized copy of P with QR and maps the
result back, so coefficients are always reported in the raw basis above.
"""
from __future__ import annotations

import json
import logging
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    DimensionMismatch,
    EmptyInput,
    InconsistentDimension,
    InsufficientData,
    InvalidConfig,
    ParseError,
    RankDeficient,
    VersionMismatch,
)

logger = logging.getLogger(__name__)

DEFAULT_DEGREE = 3
DOCUMENT_VERSION = 1
# Relative size of the smallest R diagonal below which columns count as dependent.
RANK_TOLERANCE = 1e-10
ILL_CONDITIONED = 1e8


def default_param_names(n):
    if n == 2:
        return ('maps', 'reduces')
    return tuple(f"p{i}" for i in range(1, n + 1))


@dataclass(frozen=True)
class DesignMatrix:
    entries: np.ndarray
    degree: int
    num_params: int

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def column(self, param, power):
        """Index of ``p_param ** power`` (both 1-based)."""
        return 1 + (param - 1) * self.degree + (power - 1)


@dataclass(frozen=True)
class FitMeta:
    training_size: int
    rss: float
    condition_number: float
    standardized: bool = True

    def to_dict(self):
        return {
            'training_size': self.training_size,
            'rss': self.rss,
            'condition_number': self.condition_number,
            'standardized': self.standardized,
        }


@dataclass(frozen=True)
class PolynomialModel:
    degree: int
    num_params: int
    coefficients: tuple
    fit_meta: FitMeta | None = None
    param_names: tuple = field(default=())

    def __post_init__(self):
        if self.degree < 1 or self.num_params < 1:
            raise InvalidConfig('degree and num_params must be >= 1')
        coefficients = tuple(float(c) for c in self.coefficients)
        expected = 1 + self.num_params * self.degree
        if len(coefficients) != expected:
            raise InvalidConfig(
                f"expected 1 + N*d = {expected} coefficients, got {len(coefficients)}"
            )
        if not all(math.isfinite(c) for c in coefficients):
            raise InvalidConfig('coefficients must all be finite')
        object.__setattr__(self, 'coefficients', coefficients)
        names = tuple(self.param_names) or default_param_names(self.num_params)
        if len(names) != self.num_params:
            raise InvalidConfig(f"expected {self.num_params} parameter names, got {len(names)}")
        object.__setattr__(self, 'param_names', names)


def build_design_matrix(configs, degree=DEFAULT_DEGREE):
    configs = list(configs)
    if not configs:
        raise EmptyInput('cannot build a design matrix without configurations')
    if degree < 1:
        raise InvalidConfig(f"degree must be >= 1, got {degree}")
    dims = {c.n for c in configs}
    if len(dims) > 1:
        raise InconsistentDimension(f"configurations mix parameter counts {sorted(dims)}")

    values = np.array([c.values for c in configs], dtype=float)
    blocks = [np.ones((len(configs), 1))]
    for i in range(values.shape[1]):
        # increasing vander: columns p**0 .. p**d, drop the constant
        blocks.append(np.vander(values[:, i], degree + 1, increasing=True)[:, 1:])
    entries = np.hstack(blocks)
    entries.setflags(write=False)
    return DesignMatrix(entries=entries, degree=degree, num_params=values.shape[1])


def _standardize(P):
    mean = P[:, 1:].mean(axis=0)
    scale = P[:, 1:].std(axis=0)
    if np.any(scale == 0):
        raise RankDeficient('a parameter takes a single value, its columns duplicate the intercept')
    Z = np.hstack([np.ones((P.shape[0], 1)), (P[:, 1:] - mean) / scale])
    return Z, mean, scale


def _solve_qr(X, y):
    Q, R = np.linalg.qr(X)
    diag = np.abs(np.diag(R))
    if diag.max() == 0 or diag.min() <= RANK_TOLERANCE * diag.max():
        raise RankDeficient(
            f"design matrix columns are linearly dependent "
            f"(min/max |R_ii| = {diag.min():.3g}/{diag.max():.3g})"
        )
    return np.linalg.solve(R, Q.T @ y)


def fit(dataset, degree=DEFAULT_DEGREE, standardize=True):
    """Least-squares fit of the polynomial model to an averaged dataset."""
    P = build_design_matrix(dataset.configs, degree).entries
    y = np.asarray(dataset.loads, dtype=float)
    m, cols = P.shape
    if m < cols:
        raise InsufficientData(
            f"{m} observations cannot determine 1 + N*d = {cols} coefficients"
        )

    if standardize:
        Z, mean, scale = _standardize(P)
        beta = _solve_qr(Z, y)
        slopes = beta[1:] / scale
        coefficients = np.concatenate([[beta[0] - slopes @ mean], slopes])
        condition = float(np.linalg.cond(Z))
    else:
        coefficients = _solve_qr(P, y)
        condition = float(np.linalg.cond(P))

    residual = y - P @ coefficients
    rss = float(residual @ residual)
    if condition > ILL_CONDITIONED:
        logger.warning("design matrix condition number %.3g exceeds %.0e", condition, ILL_CONDITIONED)
    logger.info("fitted degree-%d model on %d observations (rss=%.6g, cond=%.3g)",
                degree, m, rss, condition)

    return PolynomialModel(
        degree=degree,
        num_params=dataset.num_params,
        coefficients=tuple(coefficients.tolist()),
        fit_meta=FitMeta(training_size=m, rss=rss, condition_number=condition,
                         standardized=standardize),
    )


def predict(model, config):
    if config.n != model.num_params:
        raise DimensionMismatch(
            f"model expects {model.num_params} parameters, configuration has {config.n}"
        )
    row = build_design_matrix([config], model.degree).entries[0]
    return float(row @ np.asarray(model.coefficients))


def predict_many(model, configs):
    return [predict(model, c) for c in configs]


# ---------------- MODEL DOCUMENT ----------------

def save_model(model, workload=''):
    """Serialize to the versioned JSON model document.

    Coefficients are JSON numbers; Python writes the shortest repr that reads
    back to the identical double.
    """
    document = {
        'version': DOCUMENT_VERSION,
        'degree': model.degree,
        'num_params': model.num_params,
        'param_names': list(model.param_names),
        'coefficients': list(model.coefficients),
        'fit_meta': model.fit_meta.to_dict() if model.fit_meta else None,
    }
    if workload:
        document['workload'] = workload
    return json.dumps(document, indent=2) + '\n'


def _field_line(text, name):
    match = re.search(r'"%s"\s*:' % re.escape(name), text)
    if match is None:
        return None
    return text.count('\n', 0, match.start()) + 1


def _require(document, text, name, kind):
    if name not in document:
        raise ParseError('required field is missing', field=name)
    value = document[name]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(f"expected {kind.__name__}, got {type(value).__name__}",
                         line=_field_line(text, name), field=name)
    return value


def _coefficient(value, index, text):
    # hexadecimal strings ("0x1.8p+1") are accepted as well as plain numbers
    if isinstance(value, str):
        try:
            value = float.fromhex(value)
        except ValueError:
            value = None
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ParseError(f"coefficient {index} is not a finite number",
                         line=_field_line(text, 'coefficients'), field='coefficients')
    return float(value)


def load_model(text):
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(document, dict):
        raise ParseError('model document must be a JSON object', line=1)

    version = _require(document, text, 'version', int)
    if version != DOCUMENT_VERSION:
        raise VersionMismatch(f"unsupported document version {version}, expected {DOCUMENT_VERSION}",
                              line=_field_line(text, 'version'), field='version')
    degree = _require(document, text, 'degree', int)
    num_params = _require(document, text, 'num_params', int)
    if degree < 1 or num_params < 1:
        raise ParseError('degree and num_params must be >= 1', field='degree' if degree < 1 else 'num_params')
    raw = _require(document, text, 'coefficients', list)
    coefficients = tuple(_coefficient(v, i, text) for i, v in enumerate(raw))
    expected = 1 + num_params * degree
    if len(coefficients) != expected:
        raise ParseError(
            f"arity rule violated: 1 + num_params*degree = {expected} coefficients required, "
            f"found {len(coefficients)}",
            line=_field_line(text, 'coefficients'), field='coefficients',
        )
    names = document.get('param_names') or default_param_names(num_params)
    if not isinstance(names, (list, tuple)) or len(names) != num_params:
        raise ParseError(f"expected {num_params} parameter names",
                         line=_field_line(text, 'param_names'), field='param_names')

    meta = document.get('fit_meta')
    fit_meta = None
    if meta is not None:
        try:
            fit_meta = FitMeta(
                training_size=int(meta['training_size']),
                rss=float(meta['rss']),
                condition_number=float(meta['condition_number']),
                standardized=bool(meta.get('standardized', True)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed fit_meta ({exc})",
                             line=_field_line(text, 'fit_meta'), field='fit_meta') from exc

    return PolynomialModel(degree=degree, num_params=num_params, coefficients=coefficients,
                           fit_meta=fit_meta, param_names=tuple(str(n) for n in names))

