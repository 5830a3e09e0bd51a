"""Possible-move id set from python-chess attack tables (a8 = 0 indexing)."""
import hashlib

import chess


def idx(sq):
    return (7 - chess.square_rank(sq)) * 8 + chess.square_file(sq)


ids = set()
for sq in chess.SQUARES:
    for kind in (chess.QUEEN, chess.KNIGHT):
        b = chess.Board(None)
        b.set_piece_at(sq, chess.Piece(kind, chess.WHITE))
        for t in b.attacks(sq):
            ids.add(idx(sq) * 320 + idx(t) * 5)
for color, rank_from, rank_to in ((chess.WHITE, 6, 7), (chess.BLACK, 1, 0)):
    for f in range(8):
        src = chess.square(f, rank_from)
        for df in (-1, 0, 1):
            if 0 <= f + df < 8:
                tgt = chess.square(f + df, rank_to)
                for promo in (1, 2, 3, 4):
                    ids.add(idx(src) * 320 + idx(tgt) * 5 + promo)
non_promo = [i for i in ids if i % 5 == 0]
blob = b"".join(i.to_bytes(2, "little") for i in sorted(ids))
print(len(ids), len(non_promo), sum(ids), hashlib.md5(blob).hexdigest())
