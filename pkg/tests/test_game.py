import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biddinghex.board import Cell, Color
from biddinghex.errors import (
    ConfigError,
    DuplicateBidError,
    IllegalBidError,
    IllegalMoveError,
    PhaseError,
    SnapshotError,
)
from biddinghex.game import (
    AdvantageMarker,
    AwaitingBids,
    AwaitingMove,
    BidsResolved,
    Finished,
    FixedWinner,
    GameConfig,
    GameEnded,
    GameState,
    MovePlaced,
    Player,
    apply_move,
    legal_bid_range,
    new_game,
    replay,
    restore,
    snapshot,
    submit_bid,
)


def play_round(state, alice_bid, bob_bid, cell=None):
    state = submit_bid(state, Player.ALICE, alice_bid)
    state = submit_bid(state, Player.BOB, bob_bid)
    if cell is not None:
        state = apply_move(state, cell)
    return state


def random_playthrough(seed, config=None):
    """Drive a game to completion with arbitrary legal actions."""
    rand = random.Random(seed)
    state = new_game(config or GameConfig(size=rand.choice([1, 2, 3])))
    states = [state]
    while not isinstance(state.phase, Finished):
        if isinstance(state.phase, AwaitingBids):
            for player in sorted(Player, key=lambda _: rand.random()):
                state = submit_bid(state, player, rand.randint(0, state.chips(player)))
        else:
            state = apply_move(state, rand.choice(state.position.empty_cells()))
        states.append(state)
    return states


class TestSetup:
    def test_new_game_defaults(self):
        state = new_game()
        assert state.config.size == 11
        assert (state.chips_alice, state.chips_bob) == (100, 100)
        assert state.phase == AwaitingBids()
        assert state.advantage_holder is Player.BOB
        assert state.position.empty_count == 121
        assert state.history == ()

    def test_player_colors(self):
        assert Player.ALICE.color is Color.AMBER
        assert Player.BOB.color is Color.BLUE
        assert Player.ALICE.opponent is Player.BOB

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(size=0),
            dict(size=20),
            dict(chips_alice=-1),
            dict(chips_alice=0, chips_bob=1),  # total below 2
        ],
    )
    def test_config_rejected(self, kwargs):
        with pytest.raises(ConfigError):
            GameConfig(**kwargs)


class TestBidding:
    def test_higher_bid_wins_and_pays_own_bid(self):
        state = play_round(new_game(), 17, 19)
        assert state.chips_alice == 119
        assert state.chips_bob == 81
        assert state.phase == AwaitingMove(mover=Player.BOB)
        assert state.history[-1] == BidsResolved(
            alice_bid=17, bob_bid=19, winner=Player.BOB, transfer=19
        )

    def test_bid_order_does_not_matter(self):
        a = play_round(new_game(), 30, 12)
        b = submit_bid(submit_bid(new_game(), Player.BOB, 12), Player.ALICE, 30)
        assert a == b

    def test_legal_bid_range_tracks_chips(self):
        state = new_game(GameConfig(size=2, chips_alice=7, chips_bob=3))
        assert legal_bid_range(state, Player.ALICE) == (0, 7)
        assert legal_bid_range(state, Player.BOB) == (0, 3)
        state = play_round(state, 5, 3, Cell(0, 0))
        assert legal_bid_range(state, Player.ALICE) == (0, 2)
        assert legal_bid_range(state, Player.BOB) == (0, 8)

    def test_bid_limits_enforced(self):
        state = new_game()
        for bad in (-1, 101, True, False, 3.0, "10"):
            with pytest.raises(IllegalBidError):
                submit_bid(state, Player.ALICE, bad)
        submit_bid(state, Player.ALICE, 100)  # the whole stack is legal

    def test_double_bid_rejected(self):
        state = submit_bid(new_game(), Player.ALICE, 5)
        with pytest.raises(DuplicateBidError):
            submit_bid(state, Player.ALICE, 6)

    def test_no_bids_during_move_phase(self):
        state = play_round(new_game(), 2, 1)
        with pytest.raises(PhaseError):
            submit_bid(state, Player.BOB, 1)
        with pytest.raises(PhaseError):
            legal_bid_range(state, Player.ALICE)

    def test_tie_goes_to_marker_holder_then_marker_moves(self):
        state = new_game(GameConfig(size=2, tie_policy=AdvantageMarker(initial_holder=Player.ALICE)))
        state = play_round(state, 10, 10)
        assert state.phase == AwaitingMove(mover=Player.ALICE)
        assert state.chips_alice == 90  # winner still pays on a tie
        assert state.advantage_holder is Player.BOB
        state = play_round(apply_move(state, Cell(0, 0)), 10, 10)
        assert state.phase == AwaitingMove(mover=Player.BOB)
        assert state.advantage_holder is Player.ALICE

    def test_marker_stays_put_when_bids_differ(self):
        state = play_round(new_game(), 9, 4)
        assert state.advantage_holder is Player.BOB

    def test_fixed_winner_tie_policy(self):
        config = GameConfig(size=2, tie_policy=FixedWinner(player=Player.ALICE))
        for _ in range(2):
            state = play_round(new_game(config), 10, 10)
            assert state.phase == AwaitingMove(mover=Player.ALICE)


class TestMoves:
    def test_only_the_auction_winner_moves(self):
        state = play_round(new_game(GameConfig(size=2)), 8, 3, Cell(1, 1))
        assert state.position.at(Cell(1, 1)) is Color.AMBER

    def test_occupied_cell_rejected(self):
        state = play_round(new_game(GameConfig(size=2)), 8, 3, Cell(1, 1))
        state = play_round(state, 1, 2)
        with pytest.raises(IllegalMoveError):
            apply_move(state, Cell(1, 1))

    def test_move_without_auction_rejected(self):
        with pytest.raises(PhaseError):
            apply_move(new_game(), Cell(0, 0))

    def test_game_end_recorded(self):
        state = play_round(new_game(GameConfig(size=1)), 60, 40, Cell(0, 0))
        assert state.phase == Finished(winner=Player.ALICE)
        assert state.history[-1] == GameEnded(winner=Player.ALICE)
        assert isinstance(state.history[-2], MovePlaced)

    def test_finished_game_is_frozen(self):
        state = play_round(new_game(GameConfig(size=1)), 60, 40, Cell(0, 0))
        with pytest.raises(PhaseError):
            submit_bid(state, Player.BOB, 1)
        with pytest.raises(PhaseError):
            apply_move(state, Cell(0, 0))


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_chips_are_conserved_all_game(seed):
    states = random_playthrough(seed)
    total = states[0].total_chips
    for state in states:
        assert state.chips_alice + state.chips_bob == total
        assert state.chips_alice >= 0 and state.chips_bob >= 0


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_replay_rebuilds_every_intermediate_state(seed):
    states = random_playthrough(seed)
    final = states[-1]
    assert replay(final.config, final.history) == final


class TestSnapshot:
    def test_round_trip_mid_game(self):
        state = play_round(new_game(GameConfig(size=3)), 20, 10, Cell(1, 1))
        state = submit_bid(state, Player.BOB, 7)  # one sealed bid pending
        assert restore(snapshot(state)) == state

    def test_round_trip_finished(self):
        state = play_round(new_game(GameConfig(size=1)), 60, 40, Cell(0, 0))
        assert restore(snapshot(state)) == state

    @given(st.integers(0, 10_000))
    @settings(max_examples=30, deadline=None)
    def test_round_trip_any_reachable_state(self, seed):
        for state in random_playthrough(seed):
            assert restore(snapshot(state)) == state

    def test_header_required(self):
        with pytest.raises(SnapshotError):
            restore("not a snapshot")

    def test_tampered_chips_rejected(self):
        state = play_round(new_game(GameConfig(size=2)), 20, 10, Cell(0, 0))
        doc = snapshot(state)
        assert "\nchips: 80 120\n" in doc
        with pytest.raises(SnapshotError):
            restore(doc.replace("\nchips: 80 120\n", "\nchips: 70 130\n"))

    def test_tampered_position_rejected(self):
        state = play_round(new_game(GameConfig(size=2)), 20, 10, Cell(0, 0))
        doc = snapshot(state)
        with pytest.raises(SnapshotError):
            restore(doc.replace("position: 2:A./..", "position: 2:.A/.."))

    def test_truncated_history_rejected(self):
        state = play_round(new_game(GameConfig(size=2)), 20, 10, Cell(0, 0))
        lines = snapshot(state).splitlines()
        with pytest.raises(SnapshotError):
            restore("\n".join(lines[:-1]) + "\n")

    def test_unknown_keys_are_ignored(self):
        state = new_game(GameConfig(size=2))
        doc = snapshot(state).replace("history:", "note: kept for the server\nhistory:")
        assert restore(doc) == state
