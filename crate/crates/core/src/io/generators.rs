use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Instance, InstanceMeta};
use crate::error::{Error, Result};
use crate::geometry::{disks_identical, phi0, Disk, Vec3};
use crate::packing::AxisClass;

/// Disks whose normals are a √n × √n grid of cell centers covering the
/// `c × c` square around the origin, lifted onto the upper unit hemisphere.
/// Grid spacing is `ε = c/√n`.
pub fn gen_sphere_grid(n: usize, c: f64) -> Result<Instance> {
    let k = (n as f64).sqrt().round() as usize;
    if n == 0 || k * k != n {
        return Err(Error::InvalidInput(format!("n = {n} is not a positive perfect square")));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::InvalidInput(format!("side c = {c} must be positive")));
    }
    let eps = c / k as f64;
    let min_z = phi0().cos();
    let mut disks = Vec::with_capacity(n);
    for i in 0..k {
        for j in 0..k {
            let x = -c / 2.0 + (i as f64 + 0.5) * eps;
            let y = -c / 2.0 + (j as f64 + 0.5) * eps;
            let r2 = x * x + y * y;
            if r2 >= 1.0 {
                return Err(Error::InvalidInput(format!(
                    "grid point ({x}, {y}) lies outside the unit disk"
                )));
            }
            let z = (1.0 - r2).sqrt();
            if z < min_z {
                return Err(Error::InvalidInput(format!(
                    "normal ({x}, {y}, {z}) is farther than φ₀ from the z-axis"
                )));
            }
            disks.push(Disk::new(Vec3::new(x, y, z))?);
        }
    }
    let meta = InstanceMeta {
        generator: "sphere-grid".into(),
        params: json!({ "n": n, "c": c, "epsilon": eps }),
        seed: None,
    };
    Instance::new(disks, meta)
}

/// `n` normals uniform on the spherical cap of half-angle `max_angle`
/// around `axis`. Draws that coincide with an earlier disk are redrawn.
pub fn gen_random_cap(n: usize, axis: AxisClass, max_angle: f64, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if !(max_angle > 0.0 && max_angle <= phi0() + 1e-12) {
        return Err(Error::InvalidInput(format!(
            "max angle {max_angle} must lie in (0, φ₀]"
        )));
    }
    let a = axis.index();
    let cos_max = max_angle.cos();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disks: Vec<Disk> = Vec::with_capacity(n);
    let mut redraws = 0usize;
    while disks.len() < n {
        // Uniform on the cap: cos θ uniform on [cos α, 1].
        let cos_t = 1.0 - rng.random::<f64>() * (1.0 - cos_max);
        let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
        let phi = rng.random::<f64>() * std::f64::consts::TAU;
        let mut v = Vec3::ZERO;
        v[a] = cos_t;
        v[(a + 1) % 3] = sin_t * phi.cos();
        v[(a + 2) % 3] = sin_t * phi.sin();
        let d = Disk::new(v)?;
        if disks.iter().any(|e| disks_identical(e, &d)) {
            redraws += 1;
            if redraws > 1000 * n {
                return Err(Error::InvalidInput("cap too small for distinct disks".into()));
            }
            continue;
        }
        disks.push(d);
    }
    let meta = InstanceMeta {
        generator: "random-cap".into(),
        params: json!({ "n": n, "axis": axis.name(), "max_angle": max_angle }),
        seed: Some(seed),
    };
    Instance::new(disks, meta)
}
