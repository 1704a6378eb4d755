//! The three complex space forms and the Hopf-lift correspondence.
//!
//! Surfaces in CP² and CH² are handled entirely through horizontal lifts
//! into S⁵ ⊂ C³ and H⁵₁ ⊂ C³; no chart of the projective or hyperbolic
//! plane is ever built. Along a horizontal Lagrangian lift the flat second
//! derivatives ψ_uv split into a tangent part, a normal part spanned by
//! Jψ₁, Jψ₂, and components along the position ψ and fiber iψ. The normal
//! part is the horizontal lift of the projected second fundamental form.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{apply_j, herm_pair, real_pair, AmbientJet, CVec, GramSystem, Signature};

/// Decomposition residuals above this (relative) are treated as a
/// convention bug rather than round-off.
pub const SPLIT_RESIDUAL_LIMIT: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Model {
    #[serde(rename = "C2")]
    C2,
    #[serde(rename = "CP2")]
    CP2,
    #[serde(rename = "CH2")]
    CH2,
}

/// A complex space form N(c) together with how its geometry is realized.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientSpace {
    pub model: Model,
    /// Holomorphic sectional curvature.
    pub c: f64,
    pub signature: Signature,
    /// ⟨ψ, ψ⟩ on the lift space, `None` for C².
    pub lift_norm: Option<f64>,
}

impl AmbientSpace {
    pub fn c2() -> Self {
        AmbientSpace {
            model: Model::C2,
            c: 0.0,
            signature: Signature::flat_c2(),
            lift_norm: None,
        }
    }

    pub fn cp2() -> Self {
        AmbientSpace {
            model: Model::CP2,
            c: 4.0,
            signature: Signature::sphere(),
            lift_norm: Some(1.0),
        }
    }

    pub fn ch2() -> Self {
        AmbientSpace {
            model: Model::CH2,
            c: -4.0,
            signature: Signature::anti_de_sitter(),
            lift_norm: Some(-1.0),
        }
    }

    pub fn of(model: Model) -> Self {
        match model {
            Model::C2 => Self::c2(),
            Model::CP2 => Self::cp2(),
            Model::CH2 => Self::ch2(),
        }
    }

    pub fn is_lift(&self) -> bool {
        self.lift_norm.is_some()
    }

    /// Complex dimension of the space the jets live in.
    pub fn jet_dim(&self) -> usize {
        self.signature.len()
    }
}

/// Tangent and normal bases at one point, plus the directions a lift must
/// discard.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSplit {
    pub tangent: [CVec; 2],
    /// Always J applied to `tangent`.
    pub normal: [CVec; 2],
    /// The lift position ψ (lift models only).
    pub position: Option<CVec>,
    /// The fiber direction iψ (lift models only).
    pub fiber: Option<CVec>,
}

/// Coordinate-frame second fundamental form together with the diagnostics
/// of the decomposition that produced it.
#[derive(Debug, Clone)]
pub struct SecondFormSplit {
    pub frame: FrameSplit,
    /// Induced metric g_uv = ⟨∂_u, ∂_v⟩.
    pub metric: [[f64; 2]; 2],
    /// σ(∂_u, ∂_v) as ambient vectors; `sigma[0][1]` and `sigma[1][0]` are
    /// the same projection of the single stored mixed partial.
    pub sigma: [[CVec; 2]; 2],
    /// Largest flat-norm residual of ψ_uv outside the full frame span,
    /// relative to 1 + |ψ_uv|.
    pub residual: f64,
    /// Largest deviation of the ψ-coefficient from −g_uv/⟨ψ,ψ⟩.
    pub position_defect: f64,
    /// Largest iψ-coefficient (zero on a horizontal Lagrangian lift).
    pub fiber_defect: f64,
    /// Largest tangential component of Jψ_u; zero iff the normal plane is
    /// exactly J(tangent plane).
    pub normal_defect: f64,
}

/// |⟨ψ,ψ⟩ − target| on lift models; zero for C².
pub fn membership_defect(jet: &AmbientJet, space: &AmbientSpace) -> f64 {
    match space.lift_norm {
        None => 0.0,
        Some(target) => {
            let h = herm_pair(&jet.value, &jet.value, &space.signature);
            (h - Complex64::new(target, 0.0)).norm()
        }
    }
}

/// max_u |⟨ψ_u, ψ⟩| on lift models; zero for C² (no fiber).
pub fn horizontality_defect(jet: &AmbientJet, space: &AmbientSpace) -> f64 {
    if !space.is_lift() {
        return 0.0;
    }
    (0..2)
        .map(|u| herm_pair(jet.first(u), &jet.value, &space.signature).norm())
        .fold(0.0, f64::max)
}

/// max_{u,v} |Im⟨∂_u, ∂_v⟩|, the symplectic form on the tangent plane.
pub fn lagrangian_defect(jet: &AmbientJet, space: &AmbientSpace) -> f64 {
    let mut worst = 0.0f64;
    for u in 0..2 {
        for v in 0..2 {
            let h = herm_pair(jet.first(u), jet.first(v), &space.signature);
            worst = worst.max(h.im.abs());
        }
    }
    worst
}

/// Extracts the second fundamental form of the (projected) surface from
/// the jet of the immersion or its horizontal lift.
pub fn second_form_split(jet: &AmbientJet, space: &AmbientSpace) -> Result<SecondFormSplit> {
    assert_eq!(jet.dim(), space.jet_dim(), "jet does not live in this ambient");
    let sig = &space.signature;
    let tangent = [jet.d1.clone(), jet.d2.clone()];
    let normal = [apply_j(&tangent[0]), apply_j(&tangent[1])];

    let mut metric = [[0.0; 2]; 2];
    for u in 0..2 {
        for v in 0..2 {
            metric[u][v] = real_pair(&tangent[u], &tangent[v], sig);
        }
    }

    let (position, fiber) = if space.is_lift() {
        (Some(jet.value.clone()), Some(apply_j(&jet.value)))
    } else {
        (None, None)
    };

    let mut basis = vec![
        tangent[0].clone(),
        tangent[1].clone(),
        normal[0].clone(),
        normal[1].clone(),
    ];
    basis.extend(position.iter().cloned());
    basis.extend(fiber.iter().cloned());
    let system = GramSystem::new(basis, sig)?;

    let tangent_system = GramSystem::new(tangent.to_vec(), sig)?;
    let normal_defect = normal
        .iter()
        .map(|n| tangent_system.project(n).projected.flat_norm())
        .fold(0.0, f64::max);

    let mut residual = 0.0f64;
    let mut position_defect = 0.0f64;
    let mut fiber_defect = 0.0f64;
    let zero = CVec::zeros(jet.dim());
    let mut sigma = [[zero.clone(), zero.clone()], [zero.clone(), zero]];
    for (u, v) in [(0, 0), (0, 1), (1, 1)] {
        let second = jet.second(u, v);
        let p = system.project(second);
        let r = (second - &p.projected).flat_norm() / (1.0 + second.flat_norm());
        residual = residual.max(r);

        if let Some(norm) = space.lift_norm {
            let expected = -metric[u][v] / norm;
            position_defect = position_defect.max((p.coeffs[4] - expected).abs());
            fiber_defect = fiber_defect.max(p.coeffs[5].abs());
        }

        let s = &normal[0].scale(p.coeffs[2]) + &normal[1].scale(p.coeffs[3]);
        sigma[u][v] = s.clone();
        sigma[v][u] = s;
    }

    if !(residual <= SPLIT_RESIDUAL_LIMIT) {
        return Err(Error::SplitResidual { residual });
    }

    Ok(SecondFormSplit {
        frame: FrameSplit {
            tangent,
            normal,
            position,
            fiber,
        },
        metric,
        sigma,
        residual,
        position_defect,
        fiber_defect,
        normal_defect,
    })
}
