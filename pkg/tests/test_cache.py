import pytest

from ridercount.cache import CACHE_ENV, CacheStore, bundled_counts, resolve_cache_path
from ridercount.enumerator import CountRecord, count_nonattacking
from ridercount.errors import CacheCorruption
from ridercount.model import parse_piece


def test_lazy_creation_and_roundtrip(tmp_path):
    path = tmp_path / "sub" / "counts.csv"
    store = CacheStore(path)
    assert len(store) == 0 and not path.exists()
    rec = store.count(parse_piece("Q"), 2, 4)
    assert rec.count == 44
    store.flush()
    assert path.read_text().splitlines() == ["piece,q,n,count", "Q,2,4,44"]
    again = CacheStore(path)
    assert again.get(parse_piece("Q"), 2, 4) == 44
    assert ("Q", 2, 4) in again


def test_read_through_does_not_recompute(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("piece,q,n,count\nQ,2,4,44\n")
    store = CacheStore(path)

    def boom(*a, **k):
        raise AssertionError("should not compute")

    assert store.count(parse_piece("Q"), 2, 4, compute=boom).count == 44


def test_mismatch_is_corruption(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("piece,q,n,count\nQ,2,4,45\n")
    store = CacheStore(path)
    with pytest.raises(CacheCorruption):
        store.verify(count_nonattacking(parse_piece("Q"), 2, 4))
    with pytest.raises(CacheCorruption):
        store.put(CountRecord("Q", 2, 4, 44))


@pytest.mark.parametrize(
    "text",
    [
        "piece,q,count\nQ,2,4\n",
        "piece,q,n,count\nQ,2,4\n",
        "piece,q,n,count\nQ,two,4,44\n",
        "piece,q,n,count\nQ,2,4,44\nQ,2,4,45\n",
        "piece,q,n,count\nQ,2,4,-1\n",
    ],
)
def test_bad_files(tmp_path, text):
    path = tmp_path / "c.csv"
    path.write_text(text)
    with pytest.raises(CacheCorruption):
        CacheStore(path)


def test_write_back_is_stable(tmp_path):
    path = tmp_path / "c.csv"
    with CacheStore(path) as s:
        for n in range(5):
            s.count(parse_piece("N"), 2, n)
    first = path.read_text()
    with CacheStore(path) as s:
        for n in range(5):
            s.count(parse_piece("N"), 2, n)
    assert path.read_text() == first


def test_resolve_cache_path(monkeypatch, tmp_path):
    monkeypatch.delenv(CACHE_ENV, raising=False)
    assert str(resolve_cache_path(None)) == "counts.csv"
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / "env.csv"))
    assert resolve_cache_path(None) == tmp_path / "env.csv"
    assert str(resolve_cache_path("flag.csv")) == "flag.csv"


def test_bundled_counts_spot_check():
    store = bundled_counts()
    assert store.read_only
    Q = parse_piece("Q")
    assert len(store) == 5 * 48
    for q, n in [(2, 40), (3, 20), (4, 6), (4, 13)]:
        assert store.get(Q, q, n) == count_nonattacking(Q, q, n).count
