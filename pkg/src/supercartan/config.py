"""Chart configuration files: counts, names, named transitions and connections.

Plain text, one statement per line; '#' starts a comment.  Matrix blocks
reuse the expression grammar for their entries:

    n = 2
    m = 2
    base_names = z1, z2      # optional
    fiber_names = c1, c2     # optional

    transition R {
      z1, 0                  # m rows of m comma-separated scalar entries
      0, 1
    }

    connection G {           # n blocks of m rows (block A = 1 first)
      1, 0
      0, 1
      0, z2
      1, 0
    }

Transitions are checked for invertibility at load time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError, SingularMatrix, SupercartanError
from .geometry import LinearConnection, Transition
from .grassmann import Chart
from .scalars import ScalarMatrix


@dataclass
class ChartConfig:
    chart: Chart
    transitions: dict = field(default_factory=dict)
    connections: dict = field(default_factory=dict)

    @classmethod
    def default(cls, n: int = 2, m: int = 2) -> "ChartConfig":
        return cls(Chart(n, m))

    @classmethod
    def load(cls, path) -> "ChartConfig":
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ConfigError("cannot read %s: %s" % (path, exc))
        return cls.loads(text)

    @classmethod
    def loads(cls, text: str) -> "ChartConfig":
        settings = {}
        blocks = []
        lines = text.splitlines()
        index = 0
        while index < len(lines):
            line = _strip_comment(lines[index])
            index += 1
            if not line:
                continue
            head = line.split()
            if head[0] in ("transition", "connection"):
                if len(head) != 3 or head[2] != "{":
                    raise ConfigError(
                        "line %d: expected '%s NAME {'" % (index, head[0]))
                rows = []
                while True:
                    if index >= len(lines):
                        raise ConfigError("unterminated %s block" % head[0])
                    row = _strip_comment(lines[index])
                    index += 1
                    if row == "}":
                        break
                    if row:
                        rows.append((index, row))
                blocks.append((head[0], head[1], rows))
            elif "=" in line:
                key, _, value = line.partition("=")
                settings[key.strip()] = value.strip()
            else:
                raise ConfigError("line %d: cannot parse %r" % (index, line))

        chart = _build_chart(settings)
        config = cls(chart)
        for kind, name, rows in blocks:
            if kind == "transition":
                config.transitions[name] = _build_transition(name, rows, chart)
            else:
                config.connections[name] = _build_connection(name, rows, chart)
        return config


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    if cut >= 0:
        line = line[:cut]
    return line.strip()


def _build_chart(settings) -> Chart:
    try:
        n = int(settings["n"])
        m = int(settings["m"])
    except KeyError as exc:
        raise ConfigError("missing required setting %s" % exc)
    except ValueError:
        raise ConfigError("n and m must be integers")
    names = {}
    for key in ("base_names", "fiber_names"):
        if key in settings:
            names[key] = tuple(s.strip() for s in settings[key].split(","))
    try:
        return Chart(n, m, **names)
    except ValueError as exc:
        raise ConfigError(str(exc))


def _scalar_entry(text: str, chart: Chart, where: str):
    # deferred import: dsl depends on the core modules, not on config
    from .dsl import evaluate, parse

    try:
        value = evaluate(parse(text, chart), chart)
    except SupercartanError as exc:
        raise ConfigError("%s: bad entry %r (%s)" % (where, text, exc))
    from .grassmann import Superfunction
    if not isinstance(value, Superfunction) or not value.is_scalar:
        raise ConfigError("%s: entry %r is not scalar-valued" % (where, text))
    return value.body()


def _parse_rows(name, rows, chart, expected_rows):
    parsed = []
    for line_no, row in rows:
        entries = [e.strip() for e in row.split(",")]
        if len(entries) != chart.m:
            raise ConfigError("%s line %d: expected %d entries"
                              % (name, line_no, chart.m))
        parsed.append([_scalar_entry(e, chart, "%s line %d" % (name, line_no))
                       for e in entries])
    if len(parsed) != expected_rows:
        raise ConfigError("%s: expected %d rows, got %d"
                          % (name, expected_rows, len(parsed)))
    return parsed


def _build_transition(name, rows, chart) -> Transition:
    if chart.m == 0:
        raise ConfigError("transition %s: chart has no fiber generators" % name)
    parsed = _parse_rows("transition %s" % name, rows, chart, chart.m)
    try:
        return Transition(ScalarMatrix(parsed))
    except SingularMatrix:
        raise ConfigError("transition %s is singular" % name)


def _build_connection(name, rows, chart) -> LinearConnection:
    parsed = _parse_rows("connection %s" % name, rows, chart,
                         chart.n * chart.m)
    matrices = [ScalarMatrix(parsed[A * chart.m:(A + 1) * chart.m])
                for A in range(chart.n)]
    return LinearConnection(chart, matrices)
