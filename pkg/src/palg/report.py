from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckItem:
    check_id: str
    ok: bool
    witness: str = ""


@dataclass
class CheckReport:
    """Named list of pass/fail items; passes iff every item passes."""

    suite: str
    items: list[CheckItem] = field(default_factory=list)

    def add(self, check_id: str, ok, witness: str = "") -> bool:
        self.items.append(CheckItem(check_id, bool(ok), "" if ok else str(witness)))
        return bool(ok)

    def extend(self, other: "CheckReport", prefix: str | None = None):
        for item in other.items:
            cid = f"{prefix}.{item.check_id}" if prefix else item.check_id
            self.items.append(CheckItem(cid, item.ok, item.witness))

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def __bool__(self):
        return self.ok

    def failures(self) -> list[CheckItem]:
        return [item for item in self.items if not item.ok]

    def lines(self) -> list[str]:
        out = []
        for item in self.items:
            line = f"{'PASS' if item.ok else 'FAIL'} {self.suite}.{item.check_id}"
            if item.witness:
                line += f"  witness: {item.witness}"
            out.append(line)
        n_fail = len(self.failures())
        out.append(f"{'PASS' if self.ok else 'FAIL'} {self.suite}: "
                   f"{len(self.items) - n_fail}/{len(self.items)} checks passed")
        return out

    def render(self) -> str:
        return "\n".join(self.lines()) + "\n"
