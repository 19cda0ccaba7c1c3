"""Exception hierarchy shared across debsloc modules.

Every error raised by the core carries a short machine-readable ``code``
so the service layer and CLI can map failures to stable error categories
(usage / input / environment) without string matching.
"""

from __future__ import annotations


class DebslocError(Exception):
    """Base class for all debsloc errors."""

    code = "error"


class UsageError(DebslocError):
    """Caller asked for something nonsensical (bad flag value, unknown format)."""

    code = "usage"


class InputError(DebslocError):
    """Input data is malformed (index stanza, dsc, diff, override file)."""

    code = "input"


class EnvError(DebslocError):
    """The environment is unusable (missing directory, unwritable cache)."""

    code = "environment"


class IntegrityError(InputError):
    """Fetched file disagrees with its declared size or digest."""

    code = "integrity"


class FetchError(EnvError):
    """File could not be retrieved from the mirror after retries."""

    code = "fetch"


class ArchiveError(InputError):
    """Tarball is corrupt or not in the expected format."""

    code = "archive"


class TraversalError(InputError):
    """Archive member attempts to escape its extraction root."""

    code = "traversal"


class PatchError(InputError):
    """Unified diff failed to parse or apply cleanly."""

    code = "patch"


class PlanError(InputError):
    """Curation plan does not cover the records it is applied to."""

    code = "plan"


class AmbiguousVersionError(InputError):
    """Two family members compare equal; an override must pick one."""

    code = "ambiguous-version"


class CacheError(EnvError):
    """Cache root missing, unreadable, or holding undecodable records."""

    code = "cache"
