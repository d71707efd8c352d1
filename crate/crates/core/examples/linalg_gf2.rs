//! Exact linear algebra over F_p, and the bit-packed F_2 path checked
//! against the generic one.

use dkh::linalg::{BitMatrix, FpMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> dkh::Result<()> {
    let m = FpMatrix::from_rows(5, &[[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1]])?;
    let e = m.rref();
    println!("rank over F_5: {} (pivots {:?})", m.rank(), e.pivots);
    let k = m.kernel();
    println!("kernel basis: {:?}", k.basis());
    println!("solve m x = (1, 2, 1): {:?}", m.solve(&[1, 2, 1])?);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (rows, cols) = (200, 240);
    let data: Vec<u32> = (0..rows * cols).map(|_| rng.gen_range(0..2)).collect();
    let a = FpMatrix::from_vec(2, rows, cols, data)?;
    let packed = BitMatrix::from_fp(&a);
    println!(
        "{rows}x{cols} over F_2: packed rank {}, generic rank {}",
        packed.rank(),
        a.rank_generic()
    );
    println!("canonical kernels agree: {}", packed.kernel() == a.kernel_generic());
    Ok(())
}
