"""Comment-aware physical SLOC counting over files and directory trees.

A physical source line is a line (terminated by newline or end of input)
containing at least one character that is neither whitespace nor part of a
comment. The scanner is a single pass with states {code, line comment,
block comment, string}: comment markers inside string literals never open
comments, block comments may span lines, and string literals are scoped to
one line for the purpose of comment suppression.

Token precedence at a given position: block-comment openers first (in
registration order), then line markers (longest first), then string
delimiters.
"""

from __future__ import annotations

import hashlib
import os
import re
import stat
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import PurePosixPath

from .errors import EnvError
from .languages import GENERATED_MARKERS, LanguageSpec, Registry, default_registry

HEAD_BYTES = 4096
GENERATED_HEAD_LINES = 15

BINARY = "binary"
UNCLASSIFIED = "unclassified"

SKIP_GENERATED = "generated"
SKIP_UNCLASSIFIED = "unclassified"
SKIP_BINARY = "binary"
SKIP_UNREADABLE = "unreadable"
SKIP_DUPLICATE = "duplicate"


@dataclass(frozen=True)
class FileCount:
    """Per-file result; a set skipped_reason means sloc contributes nothing."""

    path: str
    language: str
    sloc: int
    total_lines: int
    skipped_reason: str | None = None


@dataclass
class TreeCount:
    root: str
    files: list[FileCount] = field(default_factory=list)
    per_language: dict[str, int] = field(default_factory=dict)
    total_sloc: int = 0

    def skipped(self) -> list[FileCount]:
        return [f for f in self.files if f.skipped_reason is not None]


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

_PROLOG_DIRECTIVE = re.compile(r"^\s*:-", re.MULTILINE)


def _interpreter_of(first_line: str) -> str | None:
    """Basename of the interpreter in a '#!' line, resolving /usr/bin/env."""
    body = first_line[2:].strip()
    if not body:
        return None
    parts = body.split()
    interp = PurePosixPath(parts[0]).name
    if interp == "env" and len(parts) > 1:
        interp = PurePosixPath(parts[1]).name
    return interp or None


def classify_file(path: str, head: bytes, registry: Registry | None = None) -> str:
    """Classify a file into a registered language id, 'binary', or 'unclassified'.

    *head* holds up to the first 4 KiB of the file. Shebang evidence
    overrides extension evidence; a NUL byte anywhere in the sample marks
    the file binary.
    """
    reg = registry or default_registry()
    if b"\x00" in head:
        return BINARY
    text = head.decode("latin-1")

    if text.startswith("#!"):
        interp = _interpreter_of(text.splitlines()[0])
        if interp:
            hit = reg.for_interpreter(interp)
            if hit:
                return hit

    name = PurePosixPath(path).name
    hit = reg.for_filename(name)
    if hit:
        return hit

    ext = PurePosixPath(path).suffix
    if not ext:
        return UNCLASSIFIED
    # Content disambiguation for extensions shared across ecosystems:
    # .inc is PHP only with an opening tag, .pl is Perl unless the file
    # opens with Prolog directives.
    if ext.lower() == ".inc":
        return "php" if ("<?" in text and reg.for_extension(".php")) else UNCLASSIFIED
    if ext.lower() == ".pl" and _PROLOG_DIRECTIVE.search(text):
        return UNCLASSIFIED
    hit = reg.for_extension(ext)
    return hit if hit else UNCLASSIFIED


def is_generated(head: str) -> tuple[bool, str | None]:
    """Check the first 15 lines for a machine-generated marker phrase."""
    sample = "\n".join(head.splitlines()[:GENERATED_HEAD_LINES]).lower()
    for marker in GENERATED_MARKERS:
        if marker in sample:
            return True, marker
    return False, None


# ---------------------------------------------------------------------------
# Line counting
# ---------------------------------------------------------------------------


class _Scanner:
    """Compiled counting tables for one language."""

    def __init__(self, spec: LanguageSpec) -> None:
        self.spec = spec
        self.blocks = spec.block_comments
        self.nested = spec.nested_blocks
        self.fixed_form = spec.fixed_form
        self.line_markers = tuple(sorted(spec.line_comments, key=len, reverse=True))
        self.strings = frozenset(spec.string_delimiters)
        firsts = {m[0] for m in self.line_markers}
        firsts.update(open_tok[0] for open_tok, _ in self.blocks)
        firsts.update(self.strings)
        if firsts:
            self.specials_re = re.compile("[" + re.escape("".join(sorted(firsts))) + "]")
        else:
            self.specials_re = None

    def count(self, text: str) -> tuple[int, int]:
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        total = len(lines)
        sloc = 0
        depth = 0
        pair: tuple[str, str] | None = None
        specials_re = self.specials_re
        for line in lines:
            if depth == 0:
                if self.fixed_form and line[:1] in ("C", "c", "*"):
                    continue
                if specials_re is None or specials_re.search(line) is None:
                    if line and not line.isspace():
                        sloc += 1
                    continue
            depth, pair, has_code = self._scan_line(line, depth, pair)
            if has_code:
                sloc += 1
        return sloc, total

    def _scan_line(
        self, line: str, depth: int, pair: tuple[str, str] | None
    ) -> tuple[int, tuple[str, str] | None, bool]:
        has_code = False
        i = 0
        n = len(line)
        while i < n:
            if depth:
                assert pair is not None
                open_tok, close_tok = pair
                nc = line.find(close_tok, i)
                no = line.find(open_tok, i) if self.nested else -1
                if nc == -1 and no == -1:
                    return depth, pair, has_code
                if no != -1 and (nc == -1 or no < nc):
                    depth += 1
                    i = no + len(open_tok)
                else:
                    depth -= 1
                    i = nc + len(close_tok)
                    if depth == 0:
                        pair = None
                continue
            match = self.specials_re.search(line, i) if self.specials_re else None
            if match is None:
                if not has_code:
                    seg = line[i:]
                    if seg and not seg.isspace():
                        has_code = True
                break
            j = match.start()
            if not has_code and j > i:
                seg = line[i:j]
                if not seg.isspace():
                    has_code = True
            i = j
            ch = line[i]
            opened = False
            for open_tok, close_tok in self.blocks:
                if line.startswith(open_tok, i):
                    depth = 1
                    pair = (open_tok, close_tok)
                    i += len(open_tok)
                    opened = True
                    break
            if opened:
                continue
            if any(line.startswith(m, i) for m in self.line_markers):
                return depth, pair, has_code
            if ch in self.strings:
                has_code = True
                i = self._skip_string(line, i + 1, ch)
                continue
            has_code = True
            i += 1
        return depth, pair, has_code

    @staticmethod
    def _skip_string(line: str, i: int, quote: str) -> int:
        """Advance past a string literal; unterminated strings end at EOL."""
        n = len(line)
        while i < n:
            nq = line.find(quote, i)
            nb = line.find("\\", i)
            if nq == -1 and nb == -1:
                return n
            if nb != -1 and (nq == -1 or nb < nq):
                i = nb + 2
            else:
                return nq + 1
        return n


@lru_cache(maxsize=None)
def _scanner(spec: LanguageSpec) -> _Scanner:
    return _Scanner(spec)


def count_file(content: str, spec: LanguageSpec) -> tuple[int, int]:
    """Count (sloc, total_lines) of *content* under the given comment grammar."""
    return _scanner(spec).count(content)


# ---------------------------------------------------------------------------
# Tree walking
# ---------------------------------------------------------------------------


def _read_file(path: str) -> bytes:
    # Separate helper so failure handling can be exercised in tests.
    with open(path, "rb") as handle:
        return handle.read()


def _measure_one(
    abs_path: str, rel_path: str, registry: Registry, want_hash: bool
) -> tuple[FileCount, str | None]:
    try:
        data = _read_file(abs_path)
    except OSError:
        return FileCount(rel_path, UNCLASSIFIED, 0, 0, SKIP_UNREADABLE), None
    language = classify_file(rel_path, data[:HEAD_BYTES], registry)
    if language == BINARY:
        return FileCount(rel_path, BINARY, 0, 0, SKIP_BINARY), None
    if language == UNCLASSIFIED:
        return FileCount(rel_path, UNCLASSIFIED, 0, 0, SKIP_UNCLASSIFIED), None
    text = data.decode("latin-1")
    generated, _marker = is_generated(text)
    if generated:
        return FileCount(rel_path, language, 0, 0, SKIP_GENERATED), None
    sloc, total = count_file(text, registry.get(language))
    digest = hashlib.sha256(data).hexdigest() if want_hash else None
    return FileCount(rel_path, language, sloc, total), digest


def _walk_files(root: str, follow_symlinks: bool) -> list[tuple[str, str]]:
    """All regular files under root as (abs, relposix), lexicographic by path."""
    found: list[tuple[str, str]] = []
    for dirpath, dirnames, filenames in os.walk(root, followlinks=follow_symlinks):
        dirnames.sort()
        for name in sorted(filenames):
            abs_path = os.path.join(dirpath, name)
            if os.path.islink(abs_path) and not follow_symlinks:
                continue
            try:
                st = os.stat(abs_path)
            except OSError:
                continue  # dangling symlink or entry that vanished mid-walk
            if not stat.S_ISREG(st.st_mode):
                continue  # fifos, sockets, devices
            rel = os.path.relpath(abs_path, root).replace(os.sep, "/")
            found.append((abs_path, rel))
    found.sort(key=lambda pair: pair[1])
    return found


def count_tree(
    root: str,
    dedup_identical: bool = False,
    follow_symlinks: bool = False,
    registry: Registry | None = None,
    jobs: int = 1,
) -> TreeCount:
    """Count every classifiable file under *root*.

    The walk is deterministic (lexicographic relative-path order) and never
    aborts on unreadable files. With dedup_identical, byte-identical file
    contents are counted once; the first path in order wins and later copies
    are recorded with a 'duplicate' skip reason. *jobs* > 1 fans per-file
    work out to threads but the result is identical to a sequential walk.
    """
    if not os.path.isdir(root):
        raise EnvError(f"not a readable directory: {root}")
    reg = registry or default_registry()
    entries = _walk_files(root, follow_symlinks)

    if jobs > 1 and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(
                    lambda e: _measure_one(e[0], e[1], reg, dedup_identical), entries
                )
            )
    else:
        results = [
            _measure_one(abs_path, rel, reg, dedup_identical)
            for abs_path, rel in entries
        ]

    tree = TreeCount(root=str(root))
    seen: set[str] = set()
    for record, digest in results:
        if record.skipped_reason is None and dedup_identical and digest is not None:
            if digest in seen:
                record = FileCount(
                    record.path, record.language, 0, record.total_lines, SKIP_DUPLICATE
                )
            else:
                seen.add(digest)
        tree.files.append(record)
        if record.skipped_reason is None:
            tree.per_language[record.language] = (
                tree.per_language.get(record.language, 0) + record.sloc
            )
            tree.total_sloc += record.sloc
    tree.per_language = dict(sorted(tree.per_language.items()))
    return tree
