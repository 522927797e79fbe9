"""Verification report: one table row's worth of recomputed values plus
named check outcomes, rendered as machine-diffable key=value lines.

Wall-clock timings are emitted as '# time.*' comment lines so that the
non-comment content of a report file is deterministic for fixed
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    family: str
    params: dict
    reps: int
    alphabet: int
    length: int
    code_size: int
    delta_tw: int
    delta_rep: int
    checks: dict = field(default_factory=dict)
    times: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.delta_tw < self.delta_rep:
            raise ValueError(
                f"delta_tw={self.delta_tw} below delta_rep={self.delta_rep}: scan is broken"
            )

    @property
    def gap(self):
        return self.delta_tw - self.delta_rep

    def all_pass(self):
        return all(self.checks.values())

    def failed(self):
        return [name for name, ok in self.checks.items() if not ok]

    def lines(self, include_times=True):
        out = [f"family={self.family}"]
        out += [f"{k}={v}" for k, v in self.params.items()]
        out += [
            f"r={self.reps}",
            f"q={self.alphabet}",
            f"length={self.length}",
            f"code_size={self.code_size}",
            f"delta_tw={self.delta_tw}",
            f"delta_rep={self.delta_rep}",
            f"gap={self.gap}",
        ]
        out += [f"check.{name}={'PASS' if ok else 'FAIL'}" for name, ok in self.checks.items()]
        if include_times:
            out += [f"# time.{name}={dt:.3f}" for name, dt in self.times.items()]
        return out

    def render(self, include_times=True):
        return "\n".join(self.lines(include_times)) + "\n"

    def write(self, path, include_times=True):
        with open(path, "w") as fh:
            fh.write(self.render(include_times))
