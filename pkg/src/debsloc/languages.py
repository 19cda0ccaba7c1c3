"""Language registry: comment grammars and classification evidence.

Each language is described by the tokens that open comments, the file-name
and shebang evidence used for classification, and the quote characters that
suppress comment recognition inside string literals. The built-in table is
a reconstruction of the circa-2002 source mix (C-family, scripting, lexer
generators, FORTRAN, ML, Modula-3, ...); an override file can add or replace
languages so tests and unusual corpora can register their own.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace

from .errors import InputError

#: Case-insensitive phrases whose presence near the top of a file marks it
#: as machine-generated (autoconf/automake, yacc/lex, protocol compilers).
GENERATED_MARKERS = (
    "generated automatically",
    "automatically generated",
    "do not edit",
    "generated by",
)


@dataclass(frozen=True)
class LanguageSpec:
    """Comment grammar and classification evidence for one language."""

    id: str
    line_comments: tuple[str, ...] = ()
    block_comments: tuple[tuple[str, str], ...] = ()
    extensions: tuple[str, ...] = ()
    filenames: tuple[str, ...] = ()
    shebangs: tuple[str, ...] = ()
    string_delimiters: tuple[str, ...] = ()
    # Block comments of this language nest (ML, Modula-3, Common Lisp).
    nested_blocks: bool = False
    # Fixed-form FORTRAN: a C/c/* in column 1 comments the whole line.
    fixed_form: bool = False


_DEFAULT_SPECS = (
    LanguageSpec(
        "c",
        line_comments=("//",),
        block_comments=(("/*", "*/"),),
        extensions=(".c", ".h"),
        string_delimiters=('"', "'"),
    ),
    LanguageSpec(
        "cpp",
        line_comments=("//",),
        block_comments=(("/*", "*/"),),
        extensions=(".cpp", ".cc", ".cxx", ".c++", ".C", ".hpp", ".hh", ".hxx", ".h++"),
        string_delimiters=('"', "'"),
    ),
    LanguageSpec(
        "shell",
        line_comments=("#",),
        extensions=(".sh", ".bash"),
        shebangs=("bash", "ksh", "zsh", "ash", "sh"),
        string_delimiters=('"', "'"),
    ),
    LanguageSpec(
        "lisp",
        line_comments=(";",),
        block_comments=(("#|", "|#"),),
        extensions=(".el", ".lisp", ".lsp", ".cl", ".scm", ".ss"),
        shebangs=("guile",),
        string_delimiters=('"',),
        nested_blocks=True,
    ),
    LanguageSpec(
        "perl",
        line_comments=("#",),
        extensions=(".pl", ".pm", ".perl"),
        shebangs=("perl",),
        string_delimiters=('"', "'"),
    ),
    LanguageSpec(
        "fortran",
        line_comments=("!",),
        extensions=(".f", ".for", ".f77", ".ftn"),
        string_delimiters=('"', "'"),
        fixed_form=True,
    ),
    LanguageSpec(
        "fortran90",
        line_comments=("!",),
        extensions=(".f90", ".f95"),
        string_delimiters=('"', "'"),
    ),
    LanguageSpec(
        "python",
        line_comments=("#",),
        extensions=(".py",),
        shebangs=("python",),
        string_delimiters=('"', "'"),
    ),
    LanguageSpec(
        "assembler",
        line_comments=(";", "#", "//"),
        block_comments=(("/*", "*/"),),
        extensions=(".s", ".S", ".asm"),
        string_delimiters=('"',),
    ),
    LanguageSpec(
        "tcl",
        line_comments=("#",),
        extensions=(".tcl", ".tk", ".itk"),
        shebangs=("tclsh", "wish"),
        string_delimiters=('"',),
    ),
    LanguageSpec(
        "php",
        line_comments=("//", "#"),
        block_comments=(("/*", "*/"),),
        extensions=(".php", ".php3", ".php4"),
        shebangs=("php",),
        string_delimiters=('"', "'"),
    ),
    LanguageSpec(
        "ada",
        line_comments=("--",),
        extensions=(".ada", ".adb", ".ads"),
        string_delimiters=('"',),
    ),
    LanguageSpec(
        "modula3",
        block_comments=(("(*", "*)"),),
        extensions=(".m3", ".i3", ".ig", ".mg"),
        string_delimiters=('"', "'"),
        nested_blocks=True,
    ),
    LanguageSpec(
        "java",
        line_comments=("//",),
        block_comments=(("/*", "*/"),),
        extensions=(".java",),
        string_delimiters=('"', "'"),
    ),
    LanguageSpec(
        "objc",
        line_comments=("//",),
        block_comments=(("/*", "*/"),),
        extensions=(".m", ".mm"),
        string_delimiters=('"', "'"),
    ),
    LanguageSpec(
        "yacc",
        line_comments=("//",),
        block_comments=(("/*", "*/"),),
        extensions=(".y", ".yy"),
        string_delimiters=('"', "'"),
    ),
    LanguageSpec(
        "ml",
        block_comments=(("(*", "*)"),),
        extensions=(".ml", ".mli", ".sml"),
        string_delimiters=('"',),
        nested_blocks=True,
    ),
    LanguageSpec(
        "lex",
        line_comments=("//",),
        block_comments=(("/*", "*/"),),
        extensions=(".l", ".ll"),
        string_delimiters=('"', "'"),
    ),
    LanguageSpec(
        "makefile",
        line_comments=("#",),
        extensions=(".mk", ".mak"),
        filenames=("Makefile", "makefile", "GNUmakefile"),
        shebangs=("make",),
    ),
)


@dataclass
class Registry:
    """Set of registered languages with extension/filename/shebang lookup."""

    specs: dict[str, LanguageSpec] = field(default_factory=dict)
    _by_extension: dict[str, str] = field(default_factory=dict)
    _by_filename: dict[str, str] = field(default_factory=dict)

    def register(self, spec: LanguageSpec, replace_existing: bool = False) -> None:
        if spec.id in self.specs and not replace_existing:
            raise InputError(f"language {spec.id!r} already registered")
        if spec.id in self.specs:
            self._forget(self.specs[spec.id])
        for ext in spec.extensions:
            owner = self._by_extension.get(ext)
            if owner is not None and owner != spec.id:
                raise InputError(f"extension {ext!r} already claimed by {owner!r}")
        for name in spec.filenames:
            owner = self._by_filename.get(name)
            if owner is not None and owner != spec.id:
                raise InputError(f"filename {name!r} already claimed by {owner!r}")
        self.specs[spec.id] = spec
        for ext in spec.extensions:
            self._by_extension[ext] = spec.id
        for name in spec.filenames:
            self._by_filename[name] = spec.id

    def _forget(self, spec: LanguageSpec) -> None:
        for ext in spec.extensions:
            self._by_extension.pop(ext, None)
        for name in spec.filenames:
            self._by_filename.pop(name, None)

    def get(self, language_id: str) -> LanguageSpec:
        try:
            return self.specs[language_id]
        except KeyError:
            raise InputError(f"unknown language {language_id!r}") from None

    def ids(self) -> list[str]:
        return sorted(self.specs)

    def for_extension(self, ext: str) -> str | None:
        hit = self._by_extension.get(ext)
        if hit is None and ext != ext.lower():
            hit = self._by_extension.get(ext.lower())
        return hit

    def for_filename(self, name: str) -> str | None:
        return self._by_filename.get(name)

    def for_interpreter(self, interpreter: str) -> str | None:
        """Match an interpreter basename against registered shebang keywords.

        Longest keyword wins so e.g. 'bash' is not shadowed by 'sh'.
        """
        candidates: list[tuple[str, str]] = []
        for spec in self.specs.values():
            for kw in spec.shebangs:
                if kw in interpreter:
                    candidates.append((kw, spec.id))
        if not candidates:
            return None
        candidates.sort(key=lambda pair: (-len(pair[0]), pair[1]))
        return candidates[0][1]

    def copy(self) -> "Registry":
        reg = Registry()
        for spec in self.specs.values():
            reg.register(spec)
        return reg


def default_registry() -> Registry:
    reg = Registry()
    for spec in _DEFAULT_SPECS:
        reg.register(spec)
    return reg


def _split_pairs(raw: str, section: str) -> tuple[tuple[str, str], ...]:
    tokens = raw.split()
    if len(tokens) % 2:
        raise InputError(
            f"override section [{section}]: block_comments needs open/close pairs, got {raw!r}"
        )
    return tuple((tokens[i], tokens[i + 1]) for i in range(0, len(tokens), 2))


def load_overrides(path: str, base: Registry | None = None) -> Registry:
    """Return a registry extended by the declarative override file at *path*.

    The file is INI-style: one section per language id, whitespace-separated
    token lists for markers/extensions/delimiters. Sections replace any
    built-in language of the same id.
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise InputError(f"cannot read language overrides {path}: {exc}") from exc
    except configparser.Error as exc:
        raise InputError(f"malformed language overrides {path}: {exc}") from exc

    reg = (base or default_registry()).copy()
    for section in parser.sections():
        opts = parser[section]
        updates: dict[str, object] = {}
        if "line_comments" in opts:
            updates["line_comments"] = tuple(opts["line_comments"].split())
        if "block_comments" in opts:
            updates["block_comments"] = _split_pairs(opts["block_comments"], section)
        if "extensions" in opts:
            updates["extensions"] = tuple(opts["extensions"].split())
        if "filenames" in opts:
            updates["filenames"] = tuple(opts["filenames"].split())
        if "shebangs" in opts:
            updates["shebangs"] = tuple(opts["shebangs"].split())
        if "strings" in opts:
            updates["string_delimiters"] = tuple(opts["strings"].split())
        if "nested_blocks" in opts:
            updates["nested_blocks"] = opts.getboolean("nested_blocks")
        if "fixed_form" in opts:
            updates["fixed_form"] = opts.getboolean("fixed_form")
        if section in reg.specs:
            reg.register(replace(reg.specs[section], **updates), replace_existing=True)
        else:
            reg.register(LanguageSpec(id=section, **updates))  # type: ignore[arg-type]
    return reg
