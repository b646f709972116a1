import pytest

from geolrc.config import FAMILIES, ConfigError, build_from_config, builtin_config, builtin_names, load_config, parse_config

GOOD = """
# comment
[field]
p = 2
m = 6

[elliptic-quotient]
curve = 0, 0, 1, 0, 0
target = 0, 0, 1, 0, 1
map = x + 1/x^2 ; y + 1/x^3
kernel_x = 0
kernel_order = 3
t = 4
"""


def test_parse_and_build():
    cfg = parse_config(GOOD, "good.cfg")
    assert cfg.family == "elliptic-quotient"
    assert cfg.field.q == 64
    assert cfg.int("t") == 4
    assert len(cfg.exprs("map")) == 2
    code = build_from_config(cfg)
    assert (code.n, code.k) == (78, 8)
    assert build_from_config(cfg, t=2).k == 4


def test_every_builtin_parses():
    names = builtin_names()
    assert len(names) >= 30
    assert {f"table1-row-{i:02d}" for i in range(1, 14)} <= set(names)
    for name in names:
        cfg = builtin_config(name)
        assert cfg.family in FAMILIES


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("[field]\np = 2\n[nope]\n", 3),
        ("p = 2\n", 1),
        ("[field]\np\n", 2),
        ("[field]\np = 2\np = 3\n", 3),
        ("[field\n", 1),
        ("[field]\np = 2\n[field]\n", 3),
    ],
)
def test_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ConfigError, match=rf"bad\.cfg:{lineno}:"):
        parse_config(text, "bad.cfg")


def test_structural_errors():
    with pytest.raises(ConfigError, match="exactly one family"):
        parse_config("[field]\np = 2\n", "x")
    with pytest.raises(ConfigError, match="field"):
        parse_config("[hermitian-quotient]\nt = 3\n", "x")
    with pytest.raises(ConfigError):
        parse_config("[field]\np = 4\n[hermitian-quotient]\nt = 3\n", "x")


def test_bad_values_name_their_key():
    cfg = parse_config(GOOD.replace("t = 4", "t = four"), "v.cfg")
    with pytest.raises(ConfigError, match="v.cfg:.*t"):
        build_from_config(cfg)
    cfg = parse_config(GOOD.replace("t = 4", "t = 0"), "v.cfg")
    with pytest.raises(ConfigError):
        build_from_config(cfg)


def test_missing_key():
    cfg = parse_config(GOOD.replace("map = x + 1/x^2 ; y + 1/x^3\n", ""), "m.cfg")
    with pytest.raises(ConfigError, match="map"):
        build_from_config(cfg)


def test_expected_section():
    cfg = builtin_config("table1-row-01")
    n, k, d, sg = cfg.expected("m3")
    assert all(isinstance(v, int) for v in (n, k, d, sg))


def test_load_config_from_file(tmp_path):
    p = tmp_path / "mine.cfg"
    p.write_text(GOOD)
    assert load_config(p).name.endswith("mine.cfg")
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.cfg")
    with pytest.raises(ConfigError):
        builtin_config("no-such-config")
