//! Application constraints for a single manipulator segment.

use crate::error::Result;
use crate::kv::KeyValues;

/// Limits a segment design must respect for a given application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RequirementsProfile {
    /// mm
    pub max_od: f64,
    /// Bending degrees of freedom per segment.
    pub dofs: u32,
    /// Required bending range, degrees.
    pub bending_deg: f64,
    /// kPa
    pub max_pressure: f64,
    /// Minimum working-channel inner diameter, mm.
    pub channel_id: f64,
}

impl RequirementsProfile {
    /// Colorectal-intervention profile: 12 mm OD, 2 DOF, 90 degree bending,
    /// 3 bar supply and a 2 mm working channel.
    pub const MEDICAL: RequirementsProfile = RequirementsProfile {
        max_od: 12.0,
        dofs: 2,
        bending_deg: 90.0,
        max_pressure: 300.0,
        channel_id: 2.0,
    };

    pub const KEYS: [&'static str; 5] = [
        "max_od",
        "dofs",
        "bending_deg",
        "max_pressure",
        "channel_id",
    ];

    /// Reads the profile keys from `kv`; absent keys keep the value in `base`.
    pub fn overlay(base: RequirementsProfile, kv: &KeyValues) -> Result<Self> {
        Ok(Self {
            max_od: kv.f64("max_od")?.unwrap_or(base.max_od),
            dofs: kv.usize("dofs")?.map_or(base.dofs, |d| d as u32),
            bending_deg: kv.f64("bending_deg")?.unwrap_or(base.bending_deg),
            max_pressure: kv.f64("max_pressure")?.unwrap_or(base.max_pressure),
            channel_id: kv.f64("channel_id")?.unwrap_or(base.channel_id),
        })
    }
}

impl Default for RequirementsProfile {
    fn default() -> Self {
        Self::MEDICAL
    }
}
