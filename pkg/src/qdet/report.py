"""Tiny result containers shared by the verification routines."""

from dataclasses import dataclass, field


@dataclass
class CheckItem:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class CheckReport:
    """A named bundle of individual pass/fail items."""

    name: str
    params: dict = field(default_factory=dict)
    items: list = field(default_factory=list)

    def add(self, name, passed, witness=""):
        self.items.append(CheckItem(name, bool(passed), witness))
        return passed

    @property
    def passed(self):
        return all(item.passed for item in self.items)

    def failures(self):
        return [item for item in self.items if not item.passed]

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        lines = ["%s: %s (%d checks)" % (self.name, status, len(self.items))]
        for item in self.failures():
            lines.append("  FAIL %s%s" % (item.name,
                                          " :: " + item.witness if item.witness else ""))
        return "\n".join(lines)
