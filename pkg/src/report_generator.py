"""
Report generation module.
Renders command results as text, JSON, CSV or Graphviz DOT, and saves them.
"""

import json
import logging
from datetime import datetime

log = logging.getLogger(__name__)

FORMATS = ("text", "json", "dot", "csv")
_EXTENSIONS = {"text": "txt", "json": "json", "dot": "dot", "csv": "csv"}


class ReportGenerator:
    """Generates the report for one command."""

    def __init__(self, config):
        self.config = config
        self.output_dir = config.REPORTS_DIR

    # -- text --------------------------------------------------------------

    def text(self, title, data):
        """Indented key: value listing under a ruled heading."""
        lines = ["=" * 60, f"  {title}", "=" * 60]
        self._text_lines(data, 0, lines)
        return "\n".join(lines) + "\n"

    def _text_lines(self, data, depth, lines):
        """Append nested mappings one level deeper."""
        pad = "  " * (depth + 1)
        for key, value in data.items():
            if isinstance(value, dict):
                lines.append(f"{pad}{key}:")
                self._text_lines(value, depth + 1, lines)
            elif isinstance(value, (list, tuple)) and value and isinstance(value[0], dict):
                lines.append(f"{pad}{key}:")
                for item in value:
                    lines.append(f"{pad}  - " + ", ".join(
                        f"{k}={self._scalar(v)}" for k, v in item.items()
                    ))
            else:
                lines.append(f"{pad}{key}: {self._scalar(value)}")

    @staticmethod
    def _scalar(value):
        """One value as report text."""
        if isinstance(value, bool):
            return "yes" if value else "no"
        if isinstance(value, (list, tuple)):
            if value and isinstance(value[0], (list, tuple)):
                return " | ".join(" ".join(str(x) for x in row) for row in value)
            return " ".join(str(x) for x in value) if value else "-"
        if value is None:
            return "-"
        return str(value)

    # -- json / csv --------------------------------------------------------

    def json(self, data):
        """Indented JSON."""
        return json.dumps(data, indent=2, default=_json_default) + "\n"

    def census_csv(self, census):
        """Frozen column order, then the aggregate counts as comment lines."""
        body = census.table.to_csv(index=False, lineterminator="\n")
        footer = "".join(f"# {key}={value}\n" for key, value in census.summary.items())
        return body + footer

    # -- dot ---------------------------------------------------------------

    def graph_dot(self, graph, name="state_graph", highlight=()):
        """Undirected DOT for a state graph; reduced edges carry their multiplicity."""
        highlight = set(highlight)
        multiplicity = getattr(graph, "multiplicity", None)
        lines = [f"graph {name} {{"]
        lines.append(f'  label="state {graph.smoothed.state}";')
        for v in graph.vertices:
            lines.append(f'  c{v} [label="{v}"];')
        for e in graph.edges:
            label = e.label
            if multiplicity is not None and multiplicity(e.id) > 1:
                label += f" x{multiplicity(e.id)}"
            attrs = [f'label="{label}"', f'id="e{e.id}"']
            attrs.append("style=solid" if e.label == "A" else "style=dashed")
            if e.id in highlight:
                attrs.append("color=red penwidth=2")
            lines.append(f"  c{e.u} -- c{e.v} [{', '.join(attrs)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    # -- saving ------------------------------------------------------------

    def save(self, name, content, fmt):
        """Write ``content`` under the reports directory with a timestamped name."""
        self.output_dir.mkdir(parents=True, exist_ok=True)
        stamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        path = self.output_dir / f"{name}_{stamp}.{_EXTENSIONS[fmt]}"
        path.write_text(content)
        log.info("report saved to %s", path)
        return path


def _json_default(value):
    """Sets as sorted lists, numpy scalars as Python ones."""
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    # numpy integers and the like
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"cannot serialize {type(value).__name__}")
