"""Data access layer package."""

from veblen_dyn.data.artifacts import (
    ArtifactRepository,
    ArtifactWriter,
    read_label_matrix,
)

__all__ = [
    "ArtifactRepository",
    "ArtifactWriter",
    "read_label_matrix",
]
