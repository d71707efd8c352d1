//! Monomial quotient rings, their elements, and free maps.

use dkh::{FreeMap, MonomialQuotientRing};

fn main() -> dkh::Result<()> {
    let r = MonomialQuotientRing::new(2, 2, vec![vec![2, 0], vec![0, 3]])?;
    println!("F_2[x1,x2]/(x1^2, x2^3) has dimension {}", r.dim());
    print!("{}", r.to_text());

    let a = r.parse_element("1+x1+x2")?;
    let b = r.parse_element("x1*x2")?;
    println!("a = {a}, a*b = {}, a^2 = {}", a.mul(&b)?, a.pow(2));
    println!(
        "F(a) = {}, a is a unit: {}, a^-1 = {}",
        a.frobenius(),
        a.is_unit(),
        a.inverse().unwrap()
    );

    let c = MonomialQuotientRing::carlsson(2)?;
    let f = FreeMap::from_entries(&c, 1, 2, &[c.var(0), c.var(1)])?;
    let g = FreeMap::from_entries(&c, 2, 1, &[c.var(1), c.var(0)])?;
    println!("f g = {}", f.compose(&g)?.get(0, 0));
    println!("f is minimal: {}", f.is_minimal());
    let text = f.to_text();
    print!("{text}");
    assert_eq!(FreeMap::from_text(&c, &text)?, f);
    Ok(())
}
