"""List every convention of the bounded realization search that yields the block exchange."""
from powell_calc import realization as rz


def main():
    hits = 0
    for conv in rz.candidates():
        p = rz.compose_moves(conv.moves())
        m = rz.match_exchange(p)
        if m:
            hits += 1
            print(f"{conv}  correction={m[0]}  squares to I: {(m[1] @ m[1]).is_identity()}")
    res = rz.search()
    print(f"{hits} of {res.n_candidates} candidates match; first: {res.convention}")
    print("product:", res.product.tolist())


if __name__ == "__main__":
    main()
