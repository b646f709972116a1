"""Line-oriented code configurations and the family builders behind them.

A configuration has a ``[field]`` section, exactly one family section and
optional ``[analysis]`` and ``[expect]`` sections::

    [field]
    p = 2
    m = 6

    [elliptic-quotient]
    curve = 0, 0, 1, 0, 0
    target = 0, 0, 1, 0, 1
    map = x + 1/x^2 ; y + 1/x^3
    kernel_x = 0
    t = 21

Lists of expressions are separated by ``;`` and lists of field literals by
``,``.  Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path

from .covers import (
    CoverError,
    cubic_normalform_cover,
    elliptic_quotient_cover,
    elliptic_variant_cover,
    hermitian_quotient_cover,
    kummer_cover,
    v4_hyperelliptic_cover,
    v4_quartic_cover,
    v4_quartic_cover_char2,
    variant_pole_setup,
)
from .curves import CurveError, WeierstrassCurve, all_subgroups_of_order, subgroup_from_x
from .engine import ConstructionError, LinearCode, build_availability_code, build_code
from .exprs import ExprSyntaxError, RatExpr, parse
from .gf import GF, FieldElement, FieldError, make_field

__all__ = [
    "FAMILIES",
    "ConfigError",
    "CodeConfig",
    "parse_config",
    "load_config",
    "builtin_names",
    "builtin_config",
    "build_from_config",
]

FAMILIES = (
    "elliptic-quotient",
    "elliptic-variant",
    "availability",
    "quartic-v4",
    "quartic-v4-char2",
    "hyperelliptic-v4",
    "kummer",
    "hermitian-quotient",
    "cubic-normalform",
    "surface",
)
_OTHER = ("field", "analysis", "expect")


class ConfigError(ValueError):
    """Invalid configuration; the message carries the line number when known."""


@dataclass
class CodeConfig:
    name: str
    sections: dict
    lines: dict = dc_field(default_factory=dict)
    _field: GF | None = None

    @property
    def family(self) -> str:
        fams = [s for s in self.sections if s in FAMILIES]
        return fams[0]

    def _where(self, section: str, key: str) -> str:
        ln = self.lines.get((section, key))
        return f"{self.name}:{ln}: " if ln else f"{self.name}: "

    @property
    def field(self) -> GF:
        if self._field is None:
            sec = self.sections["field"]
            try:
                p = int(sec["p"])
                m = int(sec.get("m", "1"))
                self._field = make_field(p, m, sec.get("modulus"))
            except KeyError as exc:
                raise ConfigError(f"{self.name}: [field] is missing {exc.args[0]!r}") from None
            except (ValueError, FieldError) as exc:
                raise ConfigError(f"{self._where('field', 'p')}{exc}") from None
        return self._field

    def params(self, section: str | None = None) -> dict:
        return self.sections[section or self.family]

    def has(self, key: str, section: str | None = None) -> bool:
        return key in self.sections.get(section or self.family, {})

    def raw(self, key: str, section: str | None = None, default=None) -> str:
        sec = section or self.family
        val = self.sections.get(sec, {}).get(key)
        if val is None:
            if default is not None:
                return default
            raise ConfigError(f"{self.name}: [{sec}] is missing {key!r}")
        return val

    def int(self, key: str, section: str | None = None, default: int | None = None) -> int:
        sec = section or self.family
        if default is not None and not self.has(key, sec):
            return default
        text = self.raw(key, sec)
        try:
            return int(text)
        except ValueError:
            raise ConfigError(f"{self._where(sec, key)}{key} must be an integer, got {text!r}") from None

    def bool(self, key: str, section: str | None = None, default: bool = False) -> bool:
        sec = section or self.family
        if not self.has(key, sec):
            return default
        text = self.raw(key, sec).lower()
        if text in ("1", "true", "yes", "on"):
            return True
        if text in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{self._where(sec, key)}{key} must be a boolean, got {text!r}")

    def expr(self, key: str, section: str | None = None) -> RatExpr:
        sec = section or self.family
        text = self.raw(key, sec)
        try:
            return parse(text, self.field)
        except (ExprSyntaxError, ValueError) as exc:
            raise ConfigError(f"{self._where(sec, key)}cannot parse {key}: {exc}") from None

    def exprs(self, key: str, section: str | None = None) -> list[RatExpr]:
        sec = section or self.family
        out = []
        for part in self.raw(key, sec).split(";"):
            try:
                out.append(parse(part.strip(), self.field))
            except (ExprSyntaxError, ValueError) as exc:
                raise ConfigError(f"{self._where(sec, key)}cannot parse {part.strip()!r}: {exc}") from None
        return out

    def literals(self, key: str, section: str | None = None) -> list[int]:
        sec = section or self.family
        out = []
        for part in self.raw(key, sec).split(","):
            try:
                out.append(self.field.parse(part.strip()))
            except ValueError as exc:
                raise ConfigError(f"{self._where(sec, key)}bad field literal {part.strip()!r}: {exc}") from None
        return out

    def curve(self, key: str, names=("x", "y"), section: str | None = None) -> WeierstrassCurve:
        co = self.literals(key, section)
        if len(co) != 5:
            raise ConfigError(f"{self._where(section or self.family, key)}{key} needs five coefficients a1, a2, a3, a4, a6")
        try:
            return WeierstrassCurve(self.field, *(FieldElement(self.field, c) for c in co), names=names)
        except CurveError as exc:
            raise ConfigError(f"{self._where(section or self.family, key)}{exc}") from None

    def expected(self, prefix: str = "") -> tuple:
        """``(n, k, d, sg)`` from ``[expect]`` keys ``<prefix>_n`` and so on."""
        pre = f"{prefix}_" if prefix else ""
        return tuple(self.int(pre + k, "expect") for k in ("n", "k", "d", "sg"))


def parse_config(text: str, name: str = "<config>") -> CodeConfig:
    sections: dict[str, dict] = {}
    lines: dict = {}
    current = None
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("["):
            if not s.endswith("]"):
                raise ConfigError(f"{name}:{lineno}: malformed section header {s!r}")
            current = s[1:-1].strip()
            if current not in FAMILIES and current not in _OTHER:
                raise ConfigError(f"{name}:{lineno}: unknown section [{current}]")
            if current in sections:
                raise ConfigError(f"{name}:{lineno}: duplicate section [{current}]")
            sections[current] = {}
            continue
        if current is None:
            raise ConfigError(f"{name}:{lineno}: key outside of any section")
        if "=" not in s:
            raise ConfigError(f"{name}:{lineno}: expected 'key = value'")
        key, val = (x.strip() for x in s.split("=", 1))
        if not key or not val:
            raise ConfigError(f"{name}:{lineno}: empty key or value")
        if key in sections[current]:
            raise ConfigError(f"{name}:{lineno}: duplicate key {key!r}")
        sections[current][key] = val
        lines[(current, key)] = lineno
    fams = [s for s in sections if s in FAMILIES]
    if len(fams) != 1:
        raise ConfigError(f"{name}: expected exactly one family section, found {len(fams)}")
    if "field" not in sections:
        raise ConfigError(f"{name}: missing [field] section")
    cfg = CodeConfig(name, sections, lines)
    cfg.field  # validate early
    return cfg


def load_config(path) -> CodeConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    return parse_config(text, str(path))


def _builtin_dir():
    return resources.files("geolrc") / "configs"


def builtin_names() -> list[str]:
    return sorted(p.name[:-4] for p in _builtin_dir().iterdir() if p.name.endswith(".cfg"))


def builtin_config(name: str) -> CodeConfig:
    res = _builtin_dir() / f"{name}.cfg"
    if not res.is_file():
        raise ConfigError(f"unknown built-in configuration {name!r}")
    return parse_config(res.read_text(encoding="utf-8"), name)


# -- builders ---------------------------------------------------------------------------


def _t(cfg: CodeConfig, overrides: dict) -> int:
    t = overrides.get("t", None)
    where = cfg._where(cfg.family, "t") if t is None else "override: "
    t = cfg.int("t") if t is None else int(t)
    if t < 1:
        raise ConfigError(f"{where}t must be at least 1, got {t}")
    return t


def _subgroup(cfg: CodeConfig, E: WeierstrassCurve, xkey: str, okey: str):
    order = cfg.int(okey, default=0) or None
    try:
        if cfg.has(xkey):
            return subgroup_from_x(E, cfg.literals(xkey), order)
        if order is None:
            raise ConfigError(f"{cfg.name}: give {xkey} (x-coordinates of the subgroup) or {okey}")
        subs = all_subgroups_of_order(E, E.points(), order)
    except CurveError as exc:
        raise ConfigError(f"{cfg._where(cfg.family, xkey)}{exc}") from None
    if len(subs) != 1:
        raise ConfigError(
            f"{cfg.name}: {len(subs)} subgroups of order {order}; name one with {xkey}"
        )
    return subs[0]


def _delta(cfg: CodeConfig, overrides: dict):
    if "delta" in overrides:
        return overrides["delta"]
    return cfg.int("delta") if cfg.has("delta") else None


def build_from_config(cfg: CodeConfig, force: bool = False, **overrides) -> LinearCode:
    """Build the code described by ``cfg``; ``overrides`` may replace ``t`` or ``m``.

    Raises :class:`ConfigError` for bad input and
    :class:`~geolrc.engine.ConstructionError` when the construction fails.
    """
    fam = cfg.family
    F = cfg.field
    try:
        if fam == "surface":
            from .surfaces import build_surface_code

            m = overrides.get("m") or cfg.int("m")
            return build_surface_code(cfg.expr("f"), cfg.int("r"), int(m))
        if fam == "availability":
            return _build_availability(cfg, overrides)
        cover = _cover(cfg, fam, F, overrides)
    except (CoverError, CurveError) as exc:
        raise ConstructionError(str(exc)) from None
    return build_code(cover, force=force)


def _cover(cfg, fam, F, overrides):
    t = _t(cfg, overrides)
    delta = _delta(cfg, overrides)
    if fam in ("elliptic-quotient", "elliptic-variant"):
        E = cfg.curve("curve")
        Ep = cfg.curve("target", names=("u", "v"))
        maps = cfg.exprs("map")
        if len(maps) != 2:
            raise ConfigError(f"{cfg._where(fam, 'map')}map needs two expressions (x and y parts)")
        G = _subgroup(cfg, E, "kernel_x", "kernel_order")
        if fam == "elliptic-quotient":
            e = cfg.exprs("e") if cfg.has("e") else None
            f = cfg.exprs("f") if cfg.has("f") else None
            return elliptic_quotient_cover(E, G, maps, Ep, t, e, f, delta, cfg.bool("include_trivial"))
        r = len(G) - 1
        pole = cfg.expr("pole_quadratic")
        e = cfg.exprs("e") if cfg.has("e") else None
        vd = variant_pole_setup(E, maps, Ep, pole, r, t, e_exprs=cfg.exprs("pole_from") if cfg.has("pole_from") else e)
        e_used = e if e is not None else vd.e_exprs
        return elliptic_variant_cover(E, G, maps, Ep, t, e_used, vd.f_exprs, delta)
    if fam == "quartic-v4":
        return v4_quartic_cover(cfg.expr("quartic"), t)
    if fam == "quartic-v4-char2":
        return v4_quartic_cover_char2(cfg.expr("quartic"), t)
    if fam == "hyperelliptic-v4":
        a, b, c, d = (cfg.literals(k)[0] for k in ("a", "b", "c", "d"))
        return v4_hyperelliptic_cover(F, a, b, c, d, t)
    if fam == "kummer":
        Y = cfg.curve("curve")
        f = cfg.exprs("f") if cfg.has("f") else None
        return kummer_cover(Y, cfg.expr("h"), cfg.int("r"), t, cfg.int("h_degree"), f, delta)
    if fam == "hermitian-quotient":
        return hermitian_quotient_cover(t)
    if fam == "cubic-normalform":
        Y = cfg.curve("curve")
        f = cfg.exprs("f_basis") if cfg.has("f_basis") else None
        return cubic_normalform_cover(Y, cfg.expr("f"), t, cfg.int("f_degree"), f, delta)
    raise ConfigError(f"unknown family {fam!r}")


def _build_availability(cfg, overrides):
    t = _t(cfg, overrides)
    E = cfg.curve("curve")
    E1 = cfg.curve("curve1") if cfg.has("curve1") else E
    E2 = cfg.curve("curve2") if cfg.has("curve2") else E
    Ep = cfg.curve("target") if cfg.has("target") else E
    phi1, phi2, psi1 = cfg.exprs("phi1"), cfg.exprs("phi2"), cfg.exprs("psi1")
    psi2 = cfg.exprs("psi2") if cfg.has("psi2") else None
    G1 = _subgroup(cfg, E, "kernel1_x", "kernel1_order")
    G2 = _subgroup(cfg, E, "kernel2_x", "kernel2_order")
    return build_availability_code(E, G1, G2, phi1, phi2, psi1, E1, E2, Ep, t, psi2=psi2)
