//! Generate one tournament from every built-in family.
//!
//! Families are deterministic given `(n, seed)`: `cycle3` is the directed
//! triangle, `transitive` orders teams by index, `superman-kryptonite` is
//! transitive except the bottom team upsets the top one, and `random`
//! flips a seeded fair coin per match.
//!
//! Run with `cargo run --example generate_families`.

use matchfix::{gen_family, FamilyId};

fn main() -> matchfix::Result<()> {
    for family in FamilyId::ALL {
        let n = match family {
            FamilyId::Cycle3 => 3,
            _ => 5,
        };
        let t = gen_family(family, n, 7)?;
        println!("== {family} (n = {n}) ==");
        println!("{t}");
        println!("outdegrees:       {:?}", (0..n).map(|i| t.outdegree(i)).collect::<Vec<_>>());
        println!("condorcet winner: {:?}", t.condorcet_winner());
        println!("top cycle:        {:?}", t.top_cycle());
        println!();
    }

    // Same seed, same tournament — the random family is reproducible.
    let a = gen_family(FamilyId::RandomUniform, 6, 42)?;
    let b = gen_family(FamilyId::RandomUniform, 6, 42)?;
    assert_eq!(a, b);
    println!("random(6, seed=42) is reproducible: {}", a == b);
    Ok(())
}
