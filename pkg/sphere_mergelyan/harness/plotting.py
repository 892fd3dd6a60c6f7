"""
Optional SVG line chart of degree against total sup-error (log scale).
Needs the ``plot`` extra (matplotlib).
"""

import logging
from pathlib import Path
from typing import Optional, Union

from sphere_mergelyan.models import ConvergenceTable

logger = logging.getLogger(__name__)


def write_svg(table: ConvergenceTable, path: Union[str, Path]) -> Optional[Path]:
    """Write the chart; returns None when matplotlib is unavailable."""
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        logger.warning("matplotlib is not installed; install the 'plot' extra for --svg")
        return None

    rows = [row for row in table.rows if row.total is not None]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy([r.degree for r in rows], [max(r.total, 1e-300) for r in rows], marker="o")
    ax.set_xlabel("degree")
    ax.set_ylabel(f"total sup-error ({table.metric})")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    logger.info(f"Wrote {path}")
    return path
