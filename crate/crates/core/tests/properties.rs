use bubbler::experiment::SweepConfig;
use bubbler::measures::{intensity, sym, GridPartition};
use bubbler::rng;
use bubbler::Image;

fn rotated_half_turn(img: &Image) -> Image {
    img.mirror_horizontal().mirror_vertical()
}

// SYM compares the left/top band with the others; anchoring on the
// right/bottom band instead is the same as measuring the image turned by a
// half turn. Batch means should barely move.
#[test]
fn g4_anchor_side_barely_moves_batch_means() {
    let cfg = SweepConfig::default();
    for sigma in [0.0, 0.5, 1.0] {
        let (mut left_top, mut right_bottom) = (0.0, 0.0);
        let n = 200;
        for i in 0..n {
            let img = cfg.render_cell(sigma, rng::child_seed(11, 0, i)).unwrap();
            left_top += sym(&intensity(&img), GridPartition::SIXTEEN, 0.05).unwrap();
            let turned = rotated_half_turn(&img);
            right_bottom += sym(&intensity(&turned), GridPartition::SIXTEEN, 0.05).unwrap();
        }
        let diff = (left_top - right_bottom).abs() / n as f64;
        assert!(diff < 0.02, "sigma {sigma}: mean shift {diff}");
    }
}

#[test]
fn g2_half_turn_is_exact() {
    let cfg = SweepConfig::default();
    for i in 0..20 {
        let img = cfg.render_cell(0.3, rng::child_seed(12, 0, i)).unwrap();
        let a = sym(&intensity(&img), GridPartition::FOUR, 0.05).unwrap();
        let b = sym(
            &intensity(&rotated_half_turn(&img)),
            GridPartition::FOUR,
            0.05,
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
