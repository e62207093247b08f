"""Model sidecar: classify text with an encoder HAP model and export its
first-token attention as schema-v1 records."""

from .export import AttendService, export_dataset
from .model import BuiltinBackend, TextTooLongError, load_backend

__version__ = "0.1.0"

__all__ = [
    "AttendService",
    "BuiltinBackend",
    "TextTooLongError",
    "export_dataset",
    "load_backend",
]
