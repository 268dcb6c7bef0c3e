"""A scripted game: we play the universal side of w + q <=_3 w and lose."""
from scottlo.game import FORALL, Game

g = Game("w+q", "w", 3, role=FORALL)
print("\n".join(g.transcript))
for move in ["5 | w", "1", "w + q | q", "0"]:
    print(g.prompt())
    print(">", move)
    print(g.play(move))
print(g.prompt())
