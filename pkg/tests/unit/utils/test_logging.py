"""
Unit tests for logging setup.
"""

import sys
import os
import logging

from rich.logging import RichHandler

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', '..'))

from src.utils.logging import configure_logging


class TestConfigureLogging:
    """Tests for configure_logging."""

    def test_installs_single_rich_handler(self):
        """Repeated calls leave exactly one RichHandler on the root logger."""
        configure_logging("DEBUG")
        configure_logging("warning")
        root = logging.getLogger()
        handlers = [h for h in root.handlers if isinstance(h, RichHandler)]
        assert len(handlers) == 1
        assert root.level == logging.WARNING
        root.removeHandler(handlers[0])
