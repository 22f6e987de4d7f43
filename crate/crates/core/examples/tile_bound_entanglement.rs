// The nine product tiles on two qutrits and the PPT entangled state built
// from the tiles left out of an unextendible subset.
use qcorr::density::{DensityMatrix, PureVector};
use qcorr::measures::{ppt_check, schmidt_decompose, vn_entropy};
use qcorr::states::{bound_entangled_tiles, tile_basis, BOUND_ENTANGLED_REMOVED};

fn main() {
    let tb = tile_basis();
    let mut worst: f64 = 0.0;
    for (i, u) in tb.tiles.iter().enumerate() {
        for (j, v) in tb.tiles.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((u.inner(v).norm() - target).abs());
        }
    }
    println!("tile Gram deviation from identity: {worst:e}");
    let ranks: Vec<usize> = tb.tiles.iter().map(|t| schmidt_decompose(t, 3, 3).unwrap().rank()).collect();
    println!("Schmidt ranks: {ranks:?}");

    let projectors: Vec<DensityMatrix> = tb.tiles.iter().map(DensityMatrix::from_pure).collect();
    let refs: Vec<&DensityMatrix> = projectors.iter().collect();
    let mix = DensityMatrix::mixture(&[1.0 / 9.0; 9], &refs).unwrap();
    let dev = mix.matrix().max_abs_diff(DensityMatrix::maximally_mixed(9).matrix());
    println!("uniform tile mixture vs 1/9: {dev:e}");

    let rho = bound_entangled_tiles();
    let ppt = ppt_check(&rho);
    println!(
        "bound entangled state: entropy {:.6} bits (rank 4 -> 2), PPT {} (min eigenvalue {:e})",
        vn_entropy(rho.density()),
        ppt.is_ppt,
        ppt.min_eigenvalue
    );
    let removed: Vec<&PureVector> =
        BOUND_ENTANGLED_REMOVED.iter().map(|&l| tb.tile(l)).chain([&tb.stopper]).collect();
    for v in removed {
        let w = rho.matrix().apply(v.amplitudes()).unwrap();
        let overlap: f64 = v.amplitudes().iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
        print!("{overlap:.1e} ");
    }
    println!("<- overlaps with the removed tiles and the stopper");
}
