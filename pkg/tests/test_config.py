import pytest

from statcommons.api.config import BIND_ENV_VAR, load_api_config
from statcommons.errors import SpecError


def test_load_full_config(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(
        "bind: \"0.0.0.0:9000\"\n"
        "store: data/store\n"
        "source_preference: [ibge, ipeadata]\n"
        "request_timeout_ms: 1500\n"
        "remotes:\n"
        "  - name: central\n"
        "    base_url: http://example.org:8400\n",
        encoding="utf-8",
    )
    config = load_api_config(path, env={})
    assert config.host == "0.0.0.0"
    assert config.port == 9000
    assert config.source_preference == ("ibge", "ipeadata")
    assert config.request_timeout_ms == 1500
    assert config.remotes[0].name == "central"
    assert config.store_dir == tmp_path / "data" / "store"


def test_bind_env_override(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text('bind: "127.0.0.1:8400"\n', encoding="utf-8")
    config = load_api_config(path, env={BIND_ENV_VAR: "127.0.0.1:9999"})
    assert config.port == 9999


def test_defaults_without_file():
    config = load_api_config(None, env={})
    assert config.bind_address == "127.0.0.1:8400"
    assert config.remotes == ()


def test_duplicate_remote_names_rejected(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(
        "remotes:\n"
        "  - {name: a, base_url: http://x}\n"
        "  - {name: a, base_url: http://y}\n",
        encoding="utf-8",
    )
    with pytest.raises(SpecError):
        load_api_config(path, env={})


def test_nonpositive_timeout_rejected(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("request_timeout_ms: 0\n", encoding="utf-8")
    with pytest.raises(SpecError):
        load_api_config(path, env={})
