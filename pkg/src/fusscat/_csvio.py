"""CSV emission: schema headers, canonical config strings, deterministic
formatting.  No timestamps anywhere, so identical configs give identical
bytes."""

import io


def canonical_config(flags):
    """Sorted, normalized flag=value serialization for the config header."""
    parts = []
    for key in sorted(flags):
        value = flags[key]
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, float):
            value = format_float(value)
        elif isinstance(value, (list, tuple)):
            value = ";".join(str(v) for v in value)
        parts.append(f"{key}={value}")
    return ",".join(parts)


def format_float(v):
    """Shortest exact decimal for a float (repr round-trips)."""
    return repr(float(v))


def format_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def render_csv(schema, config, columns, rows, extra_meta=None):
    """The full CSV text: schema and config comment headers, optional
    extra metadata comment lines, then the column header and rows."""
    buf = io.StringIO()
    buf.write(f"# schema={schema},version=1\n")
    buf.write(f"# config={config}\n")
    for line in extra_meta or ():
        buf.write(f"# {line}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(format_value(v) for v in row) + "\n")
    return buf.getvalue()


def write_text(path, text):
    """Write bytes-stable text; path '-' means stdout."""
    if path == "-":
        import sys

        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
