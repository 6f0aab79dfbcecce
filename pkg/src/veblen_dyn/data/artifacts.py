"""Artifact repositories for experiment outputs."""

import logging
from abc import ABC, abstractmethod
from pathlib import Path

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


class ArtifactRepository(ABC):
    """Abstract destination for tables and label matrices."""

    @abstractmethod
    def save_table(self, name: str, frame: pd.DataFrame) -> Path:
        """Save a table under a fixed file name."""
        pass

    @abstractmethod
    def save_matrix(self, name: str, matrix: np.ndarray, header: str) -> Path:
        """Save an integer matrix preceded by a comment line."""
        pass


class ArtifactWriter(ArtifactRepository):
    """CSV files in one output directory, written with full round-trip precision."""

    def __init__(self, out_dir: Path):
        """Initialize writer and create the output directory."""
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)

    def path_for(self, name: str) -> Path:
        return self.out_dir / name

    def save_table(self, name: str, frame: pd.DataFrame) -> Path:
        """Write ``frame`` without the index, '.' decimals and '\\n' line ends."""
        path = self.path_for(name)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        logger.debug("Wrote %s (%d rows)", path, len(frame))
        return path

    def save_matrix(self, name: str, matrix: np.ndarray, header: str) -> Path:
        path = self.path_for(name)
        with open(path, "w", newline="") as f:
            f.write(f"# {header}\n")
            pd.DataFrame(matrix).to_csv(f, header=False, index=False, lineterminator="\n")
        logger.debug("Wrote %s (%dx%d)", path, *matrix.shape)
        return path


def read_label_matrix(path: Path) -> np.ndarray:
    """Read a matrix written by ``save_matrix``."""
    return pd.read_csv(path, comment="#", header=None).to_numpy(dtype=int)
