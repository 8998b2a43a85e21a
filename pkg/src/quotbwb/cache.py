"""On-disk persistence for the Littlewood-Richardson memo table.

Plain text: a version header, then one `alpha|beta|gamma|coeff` line per
coefficient with comma-separated parts.  Loading merges into the live
memo; storing writes the lines sorted for reproducible files.
"""

from pathlib import Path

from .partitions import format_parts, parse_parts, partition
from .schur import lr_cache_merge, lr_cache_snapshot

HEADER = "quotbwb-lrcache v1"


class CacheFormatError(ValueError):
    pass


def cache_load(path) -> int:
    """Merge a cache file into the memo; returns the number of entries read."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise CacheFormatError(f"{path}: missing header '{HEADER}'")
    entries = {}
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        pieces = line.split("|")
        if len(pieces) != 4:
            raise CacheFormatError(f"{path}:{lineno}: expected 4 fields")
        try:
            a, b, g = (partition(parse_parts(p)) for p in pieces[:3])
            coeff = int(pieces[3])
        except ValueError as exc:
            raise CacheFormatError(f"{path}:{lineno}: {exc}") from exc
        if coeff < 0:
            raise CacheFormatError(f"{path}:{lineno}: negative coefficient")
        entries[(a, b, g)] = coeff
    lr_cache_merge(entries)
    return len(entries)


def cache_store(path) -> int:
    """Write the current memo, sorted; returns the number of entries written."""
    snapshot = lr_cache_snapshot()
    lines = [HEADER]
    for (a, b, g) in sorted(snapshot):
        lines.append("|".join([format_parts(a), format_parts(b),
                               format_parts(g), str(snapshot[(a, b, g)])]))
    Path(path).write_text("\n".join(lines) + "\n")
    return len(snapshot)
