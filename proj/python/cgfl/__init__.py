"""Coverage-based fault localization: python surface over the C++ core."""

try:
    from ._cgfl import (  # noqa: F401
        EvaluationError,
        InputError,
        TrainingError,
        backward_slice,
        matrix_summary,
        ranking,
        run,
        scores,
        wilcoxon,
    )
except ImportError:  # build-tree layout: extension on PYTHONPATH, not in-package
    from _cgfl import (  # noqa: F401
        EvaluationError,
        InputError,
        TrainingError,
        backward_slice,
        matrix_summary,
        ranking,
        run,
        scores,
        wilcoxon,
    )

__all__ = [
    "EvaluationError",
    "InputError",
    "TrainingError",
    "backward_slice",
    "matrix_summary",
    "ranking",
    "run",
    "scores",
    "wilcoxon",
]
