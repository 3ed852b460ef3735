"""CLI utilities."""

from .config import CONFIG_ERROR_EXIT, load_config_or_exit
from .validation import prepare_output_dir

__all__ = [
    "CONFIG_ERROR_EXIT",
    "load_config_or_exit",
    "prepare_output_dir",
]
