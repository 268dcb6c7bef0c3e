import pytest

from scottlo.game import EXISTS, FORALL, Game, IllegalMove


def test_engine_survives_as_existential_player():
    g = Game("w+q", "w", 3, role=FORALL)
    out = g.play("5 | w")
    assert "engine answers: 5 | w + q" in out
    g.play("1")
    g.play("w + q | q")
    g.play("0")
    assert g.finished and g.winner == "engine"
    assert g.rounds == 2


def test_size_challenge_wins_for_engine():
    g = Game("2", "3", 1, role=EXISTS)
    assert g.finished and g.winner == "engine"
    assert any("size challenge" in line for line in g.transcript)


def test_engine_cut_from_certificate_leaves_no_answer():
    g = Game("2", "3", 2, role=EXISTS)
    assert "4 intervals" in g.prompt()
    with pytest.raises(IllegalMove):
        g.play("0 | 0 | 0 | 0")
    assert g.play("resign") == "you resign; engine wins"


def test_illegal_moves_do_not_consume_the_turn():
    g = Game("w+q", "w", 3, role=FORALL)
    before = list(g.transcript)
    for bad in ("7", "q | w", "x |", "0"):
        with pytest.raises(IllegalMove):
            g.play(bad)
    assert g.transcript == before
    assert g.phase == "cut"
    g.play("3 | w")
    with pytest.raises(IllegalMove):
        g.play("9")


def test_resign_and_save(tmp_path):
    g = Game("w+q", "w", 3, role=FORALL)
    g.play("resign")
    assert g.finished and g.winner == "engine"
    path = tmp_path / "t.txt"
    g.save(path)
    text = path.read_text()
    assert text.startswith("claim w + q <=_3 w")
    assert "you resign" in text
    with pytest.raises(IllegalMove):
        g.play("1")


def test_bad_role():
    with pytest.raises(ValueError):
        Game("1", "1", 1, role="both")
