//! Worked examples reproduced exactly.

use residua::dynkin::{distinguished_partitions, jordan_partition, jumps_of, partition_to_segment, wdd_to_segment, Partition};
use residua::orbits::{c1, dominant_rep, OrbitContext};
use residua::rootsys::parse_weight;
use residua::segments::ResidualSegment;
use residua::{HalfInt, Kind, RootSystemSpec};

fn seg(kind: Kind, rank: usize, parts: &[u32]) -> ResidualSegment {
    partition_to_segment(&Partition::new(kind, rank, parts.to_vec()).unwrap())
}

#[test]
fn b14_reassembly() {
    assert_eq!(seg(Kind::B, 14, &[11, 9, 5, 3, 1]).to_string(), "54433222111100");
}

#[test]
fn c9_segments() {
    assert_eq!(seg(Kind::C, 9, &[18]).to_string(), "17/2,15/2,13/2,11/2,9/2,7/2,5/2,3/2,1/2");
    assert_eq!(seg(Kind::C, 9, &[12, 4, 2]).to_string(), "11/2,9/2,7/2,5/2,3/2,3/2,1/2,1/2,1/2");
    assert_eq!(seg(Kind::C, 9, &[16, 2]).to_string(), "15/2,13/2,11/2,9/2,7/2,5/2,3/2,1/2,1/2");
    assert_eq!(seg(Kind::C, 9, &[8, 6, 4]).to_string(), "7/2,5/2,5/2,3/2,3/2,3/2,1/2,1/2,1/2");
}

#[test]
fn d9_segments_and_jordan_blocks() {
    let expected = [
        ("876543210", vec![17, 1]),
        ("765432110", vec![15, 3]),
        ("654322110", vec![13, 5]),
        ("543322110", vec![11, 7]),
        ("432211100", vec![9, 5, 3, 1]),
    ];
    for (text, parts) in expected {
        let s = ResidualSegment::parse(Kind::D, text).unwrap();
        assert_eq!(jordan_partition(&s).unwrap().parts, parts, "{text}");
    }
    assert_eq!(distinguished_partitions(RootSystemSpec::new(Kind::D, 9).unwrap()).len(), 5);
}

#[test]
fn b9_jump_sets_away_from_zero() {
    // The listed sets leave out the jump at 0 that every B orbit has.
    let listed: [(&[u32], &[i64]); 4] =
        [(&[19], &[9]), (&[11, 7, 1], &[5, 3]), (&[13, 5, 1], &[6, 2]), (&[15, 3, 1], &[7, 1])];
    for (parts, jumps) in listed {
        let s = seg(Kind::B, 9, parts);
        let nonzero: Vec<HalfInt> = jumps_of(&s).unwrap().into_iter().filter(|a| *a != HalfInt::ZERO).collect();
        let want: Vec<HalfInt> = jumps.iter().map(|&a| HalfInt::from_int(a)).collect();
        assert_eq!(nonzero, want, "{parts:?}");
    }
}

#[test]
fn b15_diagram_bottom_coordinates() {
    let labels = [2, 2, 2, 2, 0, 2, 0, 0, 2, 0, 0, 0, 2, 0, 0];
    let s = wdd_to_segment(Kind::B, &labels).unwrap();
    let v = s.values();
    assert_eq!(v[14], HalfInt::ZERO);
    assert_eq!(v[13], HalfInt::ZERO);
    assert_eq!(v[12] - v[13], HalfInt::ONE);
}

#[test]
fn b17_dominant_point() {
    let ctx = OrbitContext::standard(Kind::B, 17).unwrap();
    let lambda = parse_weight("5,4,3,2,1,0,-1,4,3,3,2,2,2,1,1,1,0").unwrap();
    let (dom, _) = dominant_rep(&ctx, &lambda).unwrap();
    assert_eq!(dom, parse_weight("5,4,4,3,3,3,2,2,2,2,1,1,1,1,1,0,0").unwrap());
    assert_eq!(c1(&ctx, &dom).unwrap(), 0);
}

#[test]
fn smallest_segments() {
    assert!(ResidualSegment::parse(Kind::C, "3/2,1/2,1/2").is_ok());
    // (1,0,0) is the cuspidal string of the smallest B orbit, not a dominant residual point.
    assert!(ResidualSegment::parse(Kind::B, "100").is_err());
}
