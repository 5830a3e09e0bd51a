#!/usr/bin/env python3
"""Perft reference counts from python-chess (independent move generator).

Prints `name<TAB>depth<TAB>count` lines; the C++ suites pin these values.
Depth-5 counts run in parallel over root moves.
"""
import sys
from multiprocessing import Pool

import chess

POSITIONS = [
    ("initial", chess.STARTING_FEN),
    ("kiwipete", "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1"),
    ("endgame_rook", "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1"),
    ("promotions", "r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1"),
    ("discovered", "rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8"),
    ("middlegame", "r4rk1/1pp1qppp/p1np1n2/2b1p1B1/2B1P3/P1NP1N2/1PP1QPPP/R4RK1 w - - 0 10"),
]


def perft(board, depth):
    if depth == 0:
        return 1
    if depth == 1:
        return board.legal_moves.count()
    total = 0
    for move in board.legal_moves:
        board.push(move)
        total += perft(board, depth - 1)
        board.pop()
    return total


def job(args):
    fen, uci, depth = args
    board = chess.Board(fen)
    board.push_uci(uci)
    return perft(board, depth - 1)


def main():
    max_depth = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    with Pool() as pool:
        for name, fen in POSITIONS:
            for depth in range(1, max_depth + 1):
                board = chess.Board(fen)
                if depth <= 3:
                    count = perft(board, depth)
                else:
                    jobs = [(fen, m.uci(), depth) for m in board.legal_moves]
                    count = sum(pool.map(job, jobs))
                print(f"{name}\t{depth}\t{count}", flush=True)


if __name__ == "__main__":
    main()
