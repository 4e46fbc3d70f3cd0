"""Parser and validator for the if-then rule language.

Grammar (one rule per line, keywords case-insensitive, identifiers
case-sensitive)::

    rule := "if" cond ("and" cond)* "then" cond
    cond := IDENT "is" IDENT

``#`` starts a comment; blank lines are ignored.  An IDENT is a letter
followed by letters, digits or underscores.  Only conjunction is supported;
there is no "or", negation, or hedging.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import RuleSyntaxError, RuleValidationError
from .variables import LinguisticVariable

KEYWORDS = ("if", "is", "and", "then")

_TOKEN = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Diagnostic:
    """A single parse or validation problem, anchored in the source text."""

    line: int
    col: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


@dataclass(frozen=True)
class Condition:
    """One "VARIABLE is TERM" clause.  Positions are 1-based."""

    variable: str
    term: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Rule:
    """A conjunctive if-then rule with a single consequent."""

    antecedents: tuple[Condition, ...]
    consequent: Condition

    def __post_init__(self):
        if not self.antecedents:
            raise ValueError("rule needs at least one antecedent")


@dataclass(frozen=True)
class RuleBase:
    """An ordered list of rules plus the source text they came from."""

    rules: tuple[Rule, ...]
    source: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.rules:
            raise ValueError("rule base must be nonempty")

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


class _LineScanner:
    """Keyword/identifier scanner for a single source line."""

    def __init__(self, text: str, line_no: int):
        self.text = text
        self.line_no = line_no
        self.pos = 0
        self.errors: list[Diagnostic] = []

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self._skip_ws()
        return self.pos >= len(self.text)

    def peek_word(self):
        """Next identifier-shaped token and its column, or None."""
        self._skip_ws()
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            return None
        return m.group(0), self.pos + 1

    def take_word(self):
        word = self.peek_word()
        if word is not None:
            self.pos += len(word[0])
        return word

    def error(self, expected: str):
        self._skip_ws()
        col = self.pos + 1
        if self.pos >= len(self.text):
            found = "end of line"
        else:
            m = _TOKEN.match(self.text, self.pos)
            found = f"'{m.group(0)}'" if m else f"'{self.text[self.pos]}'"
        self.errors.append(Diagnostic(self.line_no, col, f"expected {expected}, got {found}"))


def _parse_keyword(scan: _LineScanner, keyword: str) -> bool:
    word = scan.peek_word()
    if word is not None and word[0].lower() == keyword:
        scan.take_word()
        return True
    scan.error(f"'{keyword}'")
    return False


def _parse_ident(scan: _LineScanner, what: str):
    word = scan.peek_word()
    if word is None:
        scan.error(what)
        return None
    name, col = word
    if name.lower() in KEYWORDS:
        scan.errors.append(
            Diagnostic(scan.line_no, col, f"expected {what}, got keyword '{name}'")
        )
        return None
    scan.take_word()
    return name, col


def _parse_condition(scan: _LineScanner):
    var = _parse_ident(scan, "a variable name")
    if var is None:
        return None
    if not _parse_keyword(scan, "is"):
        return None
    term = _parse_ident(scan, "a term name")
    if term is None:
        return None
    return Condition(var[0], term[0], scan.line_no, var[1])


def _parse_rule_line(text: str, line_no: int):
    scan = _LineScanner(text, line_no)
    if not _parse_keyword(scan, "if"):
        return None, scan.errors

    antecedents = []
    cond = _parse_condition(scan)
    if cond is None:
        return None, scan.errors
    antecedents.append(cond)

    while True:
        word = scan.peek_word()
        if word is None or word[0].lower() not in ("and", "then"):
            scan.error("'and' or 'then'")
            return None, scan.errors
        scan.take_word()
        if word[0].lower() == "then":
            break
        cond = _parse_condition(scan)
        if cond is None:
            return None, scan.errors
        antecedents.append(cond)

    consequent = _parse_condition(scan)
    if consequent is None:
        return None, scan.errors
    if not scan.at_end():
        scan.error("end of line")
        return None, scan.errors

    seen = set()
    for cond in antecedents:
        if cond.variable in seen:
            scan.errors.append(
                Diagnostic(
                    cond.line,
                    cond.col,
                    f"variable '{cond.variable}' appears twice in one rule's antecedent",
                )
            )
        else:
            seen.add(cond.variable)
    if scan.errors:
        return None, scan.errors
    return Rule(tuple(antecedents), consequent), []


def parse_rules(text: str) -> RuleBase:
    """Parse rule-language source into a RuleBase, preserving rule order.

    Raises RuleSyntaxError carrying every diagnostic found (parsing
    continues past a bad line so all problems are reported at once).
    """
    rules = []
    diagnostics = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        rule, errors = _parse_rule_line(line, line_no)
        diagnostics.extend(errors)
        if rule is not None:
            rules.append(rule)
    if diagnostics:
        raise RuleSyntaxError(diagnostics)
    if not rules:
        raise RuleSyntaxError([Diagnostic(1, 1, "no rules found in input")])
    return RuleBase(tuple(rules), source=text)


def format_rules(rb: RuleBase) -> str:
    """Canonical textual form of a rule base; parses back to an equal value."""
    lines = []
    for rule in rb.rules:
        conds = " and ".join(f"{c.variable} is {c.term}" for c in rule.antecedents)
        lines.append(f"if {conds} then {rule.consequent.variable} is {rule.consequent.term}")
    return "\n".join(lines) + "\n"


def _check_condition(cond, catalog, side, other_names, diagnostics):
    var = catalog.get(cond.variable)
    if var is None:
        if cond.variable in other_names:
            wrong = "an output" if side == "antecedent" else "an input"
            diagnostics.append(
                Diagnostic(
                    cond.line,
                    cond.col,
                    f"{side} references '{cond.variable}', which is {wrong} variable",
                )
            )
        else:
            diagnostics.append(
                Diagnostic(cond.line, cond.col, f"unknown variable '{cond.variable}'")
            )
        return
    if cond.term not in var.terms:
        known = ", ".join(var.terms)
        diagnostics.append(
            Diagnostic(
                cond.line,
                cond.col,
                f"variable '{cond.variable}' has no term '{cond.term}' (known terms: {known})",
            )
        )


def validate_rules(
    rb: RuleBase,
    inputs: dict[str, LinguisticVariable],
    outputs: dict[str, LinguisticVariable],
) -> list[Diagnostic]:
    """Resolve every rule against the input/output variable catalogs.

    Returns all diagnostics found (empty list means the rule base is valid):
    unknown variables, unknown terms (listing the known ones), antecedents on
    output variables, and consequents on input variables.
    """
    if not inputs or not outputs:
        raise ValueError("variable catalogs must be nonempty")
    diagnostics: list[Diagnostic] = []
    for rule in rb.rules:
        for cond in rule.antecedents:
            _check_condition(cond, inputs, "antecedent", outputs, diagnostics)
        _check_condition(rule.consequent, outputs, "consequent", inputs, diagnostics)
    return diagnostics


def check_rules(
    rb: RuleBase,
    inputs: dict[str, LinguisticVariable],
    outputs: dict[str, LinguisticVariable],
) -> RuleBase:
    """Like validate_rules but raises RuleValidationError on any diagnostic."""
    diagnostics = validate_rules(rb, inputs, outputs)
    if diagnostics:
        raise RuleValidationError(diagnostics)
    return rb
