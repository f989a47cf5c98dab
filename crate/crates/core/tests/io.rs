use diskpack_core::geometry::{angle_between, phi0, s_distance, ToleranceConfig, UnitVec3};
use diskpack_core::io::{
    export_mesh, gen_random_cap, gen_sphere_grid, parse_instance, read_solution, write_instance,
    write_solution,
};
use diskpack_core::packing::{pack, AxisClass, SolverConfig};
use diskpack_core::Error;

#[test]
fn grid_spacing_holds_for_many_parameters() {
    for n in [1usize, 4, 9, 16, 64] {
        for c in [0.1, 0.5, 1.0] {
            let g = gen_sphere_grid(n, c).unwrap();
            let eps = c / (n as f64).sqrt();
            for i in 0..n {
                assert!(angle_between(&g.disks[i], &diskpack_core::Disk::new(diskpack_core::Vec3::axis(2)).unwrap()) <= phi0());
                for j in i + 1..n {
                    assert!(angle_between(&g.disks[i], &g.disks[j]) >= eps - 1e-12);
                }
            }
        }
    }
}

#[test]
fn grid_of_64_has_spread_distances() {
    let g = gen_sphere_grid(64, 0.5).unwrap();
    let tol = ToleranceConfig::default();
    let z = UnitVec3::axis(2);
    let bound = (1.0f64 / 16.0).sin() - 1e-9;
    for i in 0..64 {
        for j in i + 1..64 {
            assert!(s_distance(&g.disks[i], &g.disks[j], z, &tol).unwrap() >= bound);
        }
    }
}

#[test]
fn generated_instances_round_trip() {
    let inst = gen_random_cap(40, AxisClass::X, 0.7, 99).unwrap();
    let bytes = write_instance(&inst);
    let back = parse_instance(&bytes).unwrap();
    assert_eq!(write_instance(&back), bytes);
    assert_eq!(back.meta, inst.meta);
    let mut sorted = inst.clone();
    sorted.canonicalize();
    assert_eq!(back.disks, sorted.disks);
}

#[test]
fn distinct_error_codes() {
    let cases: [(&[u8], &str); 4] = [
        (br#"{"disks": [[1, 0, 0], [-1, 0, 0]]}"#, "duplicate-disk"),
        (br#"{"disks": [[0, 0, 0]]}"#, "zero-vector"),
        (br#"{"disks": [[NaN, 0, 1]]}"#, "non-finite"),
        (br#"{"disks": 3}"#, "malformed"),
    ];
    for (doc, code) in cases {
        assert_eq!(parse_instance(doc).unwrap_err().code(), code);
    }
}

#[test]
fn solution_and_mesh() {
    let inst = gen_random_cap(20, AxisClass::Y, 0.5, 4).unwrap();
    let sol = pack(&inst.disks, &SolverConfig::default(), &ToleranceConfig::default()).unwrap();
    let doc = read_solution(&write_solution(&sol, None)).unwrap();
    assert_eq!(doc.solution.stats, sol.stats);
    assert_eq!(doc.certificate.holds, sol.stats.certificate_holds);

    let k = 16;
    let mesh = String::from_utf8(export_mesh(&sol, k).unwrap()).unwrap();
    let vertices = mesh.lines().filter(|l| l.starts_with("v ")).count();
    assert_eq!(vertices, 20 * (k + 1) + 8);
    assert_eq!(mesh.lines().filter(|l| l.starts_with("o disk_")).count(), 20);
    assert!(matches!(export_mesh(&sol, 2), Err(Error::InvalidInput(_))));
}
