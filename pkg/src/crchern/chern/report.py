"""Machine-readable verification outcomes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named verification.

    ``status`` is "pass" exactly when every recorded sub-assertion
    holds; the raw assertions are kept so a report can be audited
    without rerunning the check.
    """

    check: str
    params: dict
    status: str
    assertions: tuple[tuple[str, bool], ...] = ()
    witnesses: list = field(default_factory=list)
    residuals: list = field(default_factory=list)

    @staticmethod
    def from_assertions(
        check: str,
        params: dict,
        assertions: list[tuple[str, bool]],
        witnesses: list | None = None,
        residuals: list | None = None,
    ) -> "CheckReport":
        status = "pass" if all(ok for _, ok in assertions) else "fail"
        return CheckReport(
            check=check,
            params=dict(params),
            status=status,
            assertions=tuple(assertions),
            witnesses=witnesses or [],
            residuals=residuals or [],
        )

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "assertions": [
                {"name": name, "ok": ok} for name, ok in self.assertions
            ],
            "witnesses": self.witnesses,
            "residuals": self.residuals,
        }

    def to_markdown(self) -> str:
        lines = [f"### `{self.check}` -- **{self.status.upper()}**", ""]
        if self.params:
            lines.append(
                "parameters: "
                + ", ".join(f"`{k}={v}`" for k, v in sorted(self.params.items()))
            )
            lines.append("")
        lines.append("| assertion | ok |")
        lines.append("|---|---|")
        for name, ok in self.assertions:
            lines.append(f"| {name} | {'yes' if ok else 'NO'} |")
        if self.residuals:
            lines.append("")
            lines.append("residuals: " + json.dumps(self.residuals, default=str))
        if self.witnesses:
            lines.append("")
            lines.append("witnesses: " + json.dumps(self.witnesses, default=str))
        return "\n".join(lines)
