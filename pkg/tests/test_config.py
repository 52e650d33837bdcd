import pytest

from wtchaos.config import config_hash, load_config, parse_config
from wtchaos.errors import ConfigError
from wtchaos.group import GroupSpec
from wtchaos.vector import SparseVector
from wtchaos.weights import Constant, CubicRuns, MirrorProduct, Table, TwoSided

MINIMAL = 'group = "Z"\nweight = "cubic_runs"\np = 2\nN = 20\n'


def test_minimal():
    cfg = parse_config(MINIMAL)
    assert isinstance(cfg.weight, CubicRuns) and cfg.p == 2 and cfg.N == 20
    assert cfg.a.z == -1 and cfg.orbit_horizon == 20 and cfg.mode == 'rational'


def test_p_below_one():
    with pytest.raises(ConfigError, match='p must be ≥ 1') as e:
        parse_config(MINIMAL.replace('p = 2', 'p = 0.5'))
    assert e.value.key == 'p'


def test_unknown_key():
    with pytest.raises(ConfigError, match='foo') as e:
        parse_config(MINIMAL + 'foo = 1\n')
    assert e.value.key == 'foo'


@pytest.mark.parametrize('missing', ['group', 'weight', 'p', 'N'])
def test_missing_required(missing):
    text = '\n'.join(l for l in MINIMAL.splitlines() if not l.startswith(missing + ' '))
    with pytest.raises(ConfigError) as e:
        parse_config(text)
    assert e.value.key == missing


@pytest.mark.parametrize('line,key', [
    ('N = 1', 'N'), ('theta = 1.5', 'theta'), ('window = [5, 1]', 'window'),
    ('mode = "float"', 'mode'), ('B = [0]', 'B'), ('vector = "nope"', 'vector'),
    ('group = "Q"', 'group'), ('a = 0', 'a'), ('K = []', 'K'), ('delta_grid = [-1]', 'delta_grid'),
])
def test_invalid_values(line, key):
    k = line.split(' ')[0]
    text = '\n'.join(l for l in MINIMAL.splitlines() if not l.startswith(k + ' ')) + '\n' + line
    with pytest.raises(ConfigError) as e:
        parse_config(text)
    assert e.value.key == key


def test_weight_tables():
    cfg = parse_config(MINIMAL.replace('"cubic_runs"', '{rule = "two_sided", left = 1, right = 2}'))
    assert isinstance(cfg.weight, TwoSided)
    cfg = parse_config(MINIMAL.replace('"cubic_runs"', '{rule = "constant", value = "1/2"}'))
    assert isinstance(cfg.weight, Constant) and cfg.weight.value.denominator == 2
    with pytest.raises(ConfigError) as e:
        parse_config(MINIMAL.replace('"cubic_runs"', '{rule = "constant", v = 2}'))
    assert e.value.key == 'weight.v'
    with pytest.raises(ConfigError):
        parse_config(MINIMAL.replace('"cubic_runs"', '"zigzag"'))
    cfg = parse_config(MINIMAL.replace('"cubic_runs"',
                                       '{rule = "table", entries = [[0, 2], [5, "1/3"]], default = 1}'))
    assert isinstance(cfg.weight, Table) and cfg.weight.eval(5).denominator == 3


def test_mirror_config():
    text = ('group = "ZxZm"\nm = 2\na = [-1, 0]\nweight = {rule = "mirror_product", '
            'base = "cubic_runs"}\np = 2\nN = 10\nvector = "char:0:1"\n')
    cfg = parse_config(text)
    assert cfg.group == GroupSpec.product(2) and isinstance(cfg.weight, MirrorProduct)
    assert cfg.explicit_vector() == SparseVector({cfg.group.element(0, 1): 1})
    with pytest.raises(ConfigError):
        parse_config(MINIMAL.replace('"cubic_runs"', '{rule = "mirror_product", base = "cubic_runs"}'))


def test_table_file(tmp_path):
    (tmp_path / 'w.csv').write_text('position,value\ndefault,1\n3,2\n')
    path = tmp_path / 'c.toml'
    path.write_text(MINIMAL.replace('"cubic_runs"', '{rule = "table", table_file = "w.csv"}'))
    cfg = load_config(str(path))
    assert cfg.weight.eval(3) == 2


def test_vector_triples():
    cfg = parse_config(MINIMAL + 'vector = [[0, 1, 0], [2, "1/3"], [5, 0.5, 2.0]]\n')
    v = cfg.explicit_vector()
    assert v[cfg.group.element(2)].denominator == 3
    assert v[cfg.group.element(5)] == complex(0.5, 2.0)


def test_overrides_and_hash():
    cfg = parse_config(MINIMAL + 'B = [1, 5, 20]\n')
    c2 = cfg.with_overrides(N=30, mode='log')
    assert c2.N == 30 and c2.mode == 'log' and c2.B == (1, 5, 20)
    with pytest.raises(ConfigError):
        cfg.with_overrides(N=10)
    assert cfg.content_hash == config_hash(dict(reversed(list(cfg.raw.items()))))


def test_bad_toml():
    with pytest.raises(ConfigError):
        parse_config('group = ')
