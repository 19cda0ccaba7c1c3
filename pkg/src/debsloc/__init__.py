"""debsloc: measure physical SLOC of Debian-style source package corpora.

The package walks source trees counting physical lines of code with
comment-aware lexing, drives the download/unpack/patch/strip measurement
pipeline for source packages, and derives language breakdowns, size
distributions, and COCOMO effort/cost estimates from the cached results.
"""

__version__ = "0.1.0"

# Identifies the counting logic in cache provenance; bump when counting
# semantics change so stale cache records are recomputed.
TOOL_VERSION = f"debsloc/{__version__}"
