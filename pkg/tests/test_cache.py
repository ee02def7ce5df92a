import json
import warnings

import pytest

from ringel_hall.cache import CacheKey, CacheWarning, TableCache, cache_load, cache_store
from ringel_hall.green import sweep_green
from ringel_hall.quiver import preset_quiver
from ringel_hall.reps import TableStore, build_iso_table


def test_key_is_deterministic():
    Q = preset_quiver("kronecker")
    k1, k2 = CacheKey.of(Q, 2, (1, 1)), CacheKey.of(preset_quiver("kronecker"), 2, [1, 1])
    assert k1 == k2 and k1.stem == k2.stem
    assert CacheKey.of(Q, 3, (1, 1)) != k1


def test_round_trip_and_clear(tmp_path):
    cache = TableCache(tmp_path)
    Q = preset_quiver("jordan")
    t = build_iso_table(Q, 3, (2,))
    key = CacheKey.of(Q, 3, (2,))
    assert cache_load(cache, key) is None
    cache_store(cache, key, t)
    again = cache_load(cache, key)
    assert again.to_json() == t.to_json()
    assert (again.labels == t.labels).all()
    assert not list(tmp_path.glob("*.tmp"))
    cache.clear()
    assert cache_load(cache, key) is None


def test_tampered_entry_is_rebuilt(tmp_path):
    cache = TableCache(tmp_path)
    Q = preset_quiver("a2")
    key = CacheKey.of(Q, 3, (1, 1))
    good = build_iso_table(Q, 3, (1, 1))
    cache.store(key, good)
    path = tmp_path / f"{key.stem}.json"
    data = json.loads(path.read_text())
    data["classes"][0]["orbit"] += 1
    path.write_text(json.dumps(data))
    with pytest.raises(ValueError):
        cache.load(key)
    with pytest.warns(CacheWarning):
        t = cache.load_or_build(Q, 3, (1, 1))
    assert t.to_json() == good.to_json()
    assert cache.load(key).to_json() == good.to_json()


def test_garbage_entry_is_rebuilt(tmp_path):
    cache = TableCache(tmp_path)
    Q = preset_quiver("a2")
    key = CacheKey.of(Q, 2, (1, 1))
    (tmp_path / f"{key.stem}.json").write_text("{not json")
    with pytest.warns(CacheWarning):
        t = cache.load_or_build(Q, 2, (1, 1))
    assert len(t) == 2


def test_bad_label_sidecar_is_ignored(tmp_path):
    cache = TableCache(tmp_path)
    Q = preset_quiver("jordan")
    key = CacheKey.of(Q, 2, (2,))
    cache.store(key, build_iso_table(Q, 2, (2,)))
    (tmp_path / f"{key.stem}.labels.npy").write_bytes(b"junk")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        t = cache.load(key)
    assert t.labels is None


def test_cache_is_transparent(tmp_path, monkeypatch):
    monkeypatch.setenv("HALL_CACHE_DIR", str(tmp_path))
    Q = preset_quiver("kronecker")
    cold = TableStore(Q, 2, cache=TableCache.from_env())
    r1 = sweep_green(cold, 2).to_tsv()
    assert list(tmp_path.glob("*.json"))
    warm = TableStore(Q, 2, cache=TableCache.from_env())
    r2 = sweep_green(warm, 2).to_tsv()
    plain = sweep_green(TableStore(Q, 2), 2).to_tsv()
    assert r1 == r2 == plain


def test_from_env_unset(monkeypatch):
    monkeypatch.delenv("HALL_CACHE_DIR", raising=False)
    assert TableCache.from_env() is None
