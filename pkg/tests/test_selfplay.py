from biddinghex.game import AdvantageMarker, FixedWinner, GameConfig, Player
from biddinghex.selfplay import AdvisedPlayer, GameRecord, RandomPlayer, play_game, play_match


def test_single_cell_tie_goes_to_marker_holder():
    # both advisors see a fully critical hex and bid half the pot, so the
    # marker decides the whole game
    config = GameConfig(size=1, tie_policy=AdvantageMarker(initial_holder=Player.BOB))
    record = play_game(config, AdvisedPlayer(trials=64), AdvisedPlayer(trials=64, seed=1))
    assert record.winner is Player.BOB
    assert record.rounds == 1


def test_record_tracks_chips_per_round():
    record = play_game(
        GameConfig(size=2), AdvisedPlayer(trials=256), AdvisedPlayer(trials=256, seed=9)
    )
    assert isinstance(record, GameRecord)
    # initial chips plus one entry per completed round
    assert len(record.chips_alice_by_round) == record.rounds + 1
    total = record.final.total_chips
    assert all(0 <= c <= total for c in record.chips_alice_by_round)
    assert record.final.chips_alice + record.final.chips_bob == total


def test_random_players_finish_and_conserve_chips():
    record = play_game(GameConfig(size=3), RandomPlayer(seed=5), RandomPlayer(seed=6))
    assert record.winner in (Player.ALICE, Player.BOB)
    assert record.final.chips_alice + record.final.chips_bob == 200


def test_random_player_is_deterministic():
    config = GameConfig(size=3)
    one = play_game(config, RandomPlayer(seed=3), RandomPlayer(seed=4))
    two = play_game(config, RandomPlayer(seed=3), RandomPlayer(seed=4))
    assert one.final == two.final


def test_match_counts_add_up():
    result = play_match(
        GameConfig(size=2),
        games=6,
        seed=0,
        make_alice=lambda s: RandomPlayer(seed=s),
        make_bob=lambda s: RandomPlayer(seed=s),
    )
    assert result.games == 6
    assert result.alice_wins + result.bob_wins == 6
    assert 0.0 <= result.alice_rate <= 1.0


def test_exact_advisor_crushes_random_play_when_holding_the_marker():
    config = GameConfig(size=2, tie_policy=AdvantageMarker(initial_holder=Player.ALICE))
    result = play_match(
        config,
        games=30,
        seed=1,
        make_alice=lambda s: AdvisedPlayer(exact=True),
        make_bob=lambda s: RandomPlayer(seed=s),
    )
    assert result.alice_wins >= 28


def test_sampling_advisor_beats_random_play():
    config = GameConfig(size=3, tie_policy=FixedWinner(player=Player.BOB))
    result = play_match(
        config,
        games=20,
        seed=2,
        make_alice=lambda s: AdvisedPlayer(trials=2000, seed=s),
        make_bob=lambda s: RandomPlayer(seed=s),
    )
    assert result.alice_wins >= 18
