//! Exactness certificates for 0 -> Λ̃² -> T̃² -> S̃² -> 0 and, in
//! characteristic 2, 0 -> F -> S̃² -> Λ̃² -> 0.

use dkh::complex::random_complex;
use dkh::dold_kan::{lem419, odd_split_check, ses_maps};
use dkh::MonomialQuotientRing;

fn main() -> dkh::Result<()> {
    let r = MonomialQuotientRing::carlsson(2)?;
    let p = random_complex(&r, &[2, 2], 1, true)?;
    let ses = ses_maps(&p, true)?;
    for (name, s) in [("main", &ses.main), ("char2", ses.char2.as_ref().unwrap())] {
        println!("{name}: {:?}", s.functors);
        for c in &s.certificates {
            println!("  degree {}: ranks {:?}, exact {}", c.degree, c.ranks, c.exact());
        }
        let chi: Vec<i64> = s.homology.iter().map(|h| h.chi).collect();
        println!("  euler {chi:?}, additive {}", s.euler_additive());
    }
    let (lhs, rhs) = lem419(&p)?;
    println!("dim H_0(Λ̃²P) = {lhs}, dim Λ²(H_0 P) = {rhs}");

    let t = MonomialQuotientRing::truncated(3, 3)?;
    let q = random_complex(&t, &[1, 2], 4, true)?;
    println!("odd characteristic split T̃² = Λ̃² ⊕ S̃²: {}", odd_split_check(&q)?);
    Ok(())
}
