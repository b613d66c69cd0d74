"""Phase schedules: normative boundaries and full partition coverage."""

import pytest

import memsuite as ms
from memsuite.errors import OutOfEpisode
from memsuite.tabletop import phase_of


def test_shell_game_phases():
    assert phase_of("ShellGame", "Touch", 0) == "observation"
    assert phase_of("ShellGame", "Touch", 4) == "observation"
    assert phase_of("ShellGame", "Touch", 5) == "delay"      # covered on step 5
    assert phase_of("ShellGame", "Touch", 6) == "action"
    assert phase_of("ShellGame", "Touch", 89) == "action"


def test_remember_color_phases():
    assert phase_of("RememberColor5", None, 4) == "observation"
    assert phase_of("RememberColor5", None, 7) == "delay"
    assert phase_of("RememberColor5", None, 9) == "delay"
    assert phase_of("RememberColor5", None, 10) == "selection"


def test_seq_of_colors_observation_window_scales_with_cues():
    # N cues are shown one at a time, five steps each
    assert phase_of("SeqOfColors7", None, 34) == "observation"   # 5*7-1
    assert phase_of("SeqOfColors7", None, 35) == "delay"
    assert phase_of("SeqOfColors7", None, 39) == "delay"
    assert phase_of("SeqOfColors7", None, 40) == "selection"
    assert phase_of("SeqOfColors3", None, 14) == "observation"
    assert phase_of("SeqOfColors3", None, 15) == "delay"
    assert phase_of("SeqOfColors3", None, 20) == "selection"


def test_bunch_shows_all_cues_in_one_window():
    assert phase_of("BunchOfColors7", None, 4) == "observation"
    assert phase_of("BunchOfColors7", None, 5) == "delay"
    assert phase_of("BunchOfColors7", None, 10) == "selection"


def test_single_phase_tasks():
    for task, mode in [("TakeItBack", None), ("Intercept", "Slow"),
                       ("InterceptGrab", "Fast"), ("RotateLenient", "Pos"),
                       ("RotateStrict", "PosNeg")]:
        assert phase_of(task, mode, 0) == "action"


def test_phase_out_of_episode():
    with pytest.raises(OutOfEpisode):
        phase_of("ShellGame", "Touch", 90)
    with pytest.raises(OutOfEpisode):
        phase_of("RememberColor3", None, -1)


def test_phases_partition_episode_for_every_task():
    for meta in ms.all_task_metas():
        if meta.task_id not in ms.tabletop.TABLETOP_FAMILIES:
            continue
        for mode in meta.modes:
            seen = [phase_of(meta.task_id, mode, t) for t in range(meta.timeout)]
            assert len(seen) == meta.timeout  # no gaps: every step has a phase


def test_timeouts_match_published_table():
    expected = {
        "ShellGame": 90, "Intercept": 90, "InterceptGrab": 90,
        "RotateLenient": 90, "RotateStrict": 90, "TakeItBack": 180,
        "RememberColor": 60, "RememberShape": 60, "RememberShapeAndColor": 60,
        "BunchOfColors": 120, "SeqOfColors": 120, "ChainOfColors": 120,
    }
    for family, timeout in expected.items():
        for meta in ms.all_task_metas():
            if meta.task_id == family:
                assert meta.timeout == timeout, family
                assert meta.timeout in (90, 60, 120, 180)
