"""Batch front end."""

from .config import ConfigError, RunConfig, load_config, parse_config
from .main import build_parser, export_columns, main

__all__ = ["ConfigError", "RunConfig", "build_parser", "export_columns", "load_config", "main", "parse_config"]
