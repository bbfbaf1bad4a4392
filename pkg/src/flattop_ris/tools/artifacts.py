"""
Run directory writer.
"""

from __future__ import annotations

import logging
from pathlib import Path

logger = logging.getLogger(__name__)


class ArtifactWriter:
    """Writes named text artifacts into one output directory."""

    def __init__(self, output_dir: Path | str) -> None:
        self.output_dir = Path(output_dir)
        self.written: list[Path] = []

    def path(self, name: str) -> Path:
        return self.output_dir / name

    def write(self, name: str, content: str) -> Path:
        """Write ``content`` to ``name``, creating the directory on first use."""
        self.output_dir.mkdir(parents=True, exist_ok=True)
        target = self.path(name)
        target.write_text(content, encoding="utf-8", newline="\n")
        self.written.append(target)
        logger.info("Wrote %s", target)
        return target
