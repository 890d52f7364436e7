from .artifacts import (
    FORMAT_VERSION,
    ArtifactWriter,
    read_artifact_frame,
    read_artifact_header,
    read_histogram_csv,
)
from .manifest import MANIFEST_NAME, RunManifest, ManifestRegistry

__all__ = [
    "FORMAT_VERSION",
    "ArtifactWriter",
    "read_artifact_frame",
    "read_artifact_header",
    "read_histogram_csv",
    "MANIFEST_NAME",
    "RunManifest",
    "ManifestRegistry",
]
