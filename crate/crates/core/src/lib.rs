//! Associated cominuscule subvarieties of flag varieties, computed from
//! decorated Dynkin diagrams.
//!
//! The pipeline grades a root system by a decoration ([`grading`]), takes the
//! subsystem generated by the roots of extreme grade ([`subsystem`]),
//! recognizes its decorated diagram and looks it up in the cominuscule table
//! ([`classify`]). [`hasse`] draws the labeled Hasse diagrams and [`verify`]
//! checks the whole pipeline against independent rules.

pub mod classify;
pub mod error;
pub mod grading;
pub mod hasse;
pub mod notation;
pub mod rootsys;
pub mod subsystem;
pub mod verify;

pub use classify::{classify_cominuscule, recognize, CominusculeId, Recognition};
pub use error::{Error, Result};
pub use grading::{Decoration, GradedRootSystem};
pub use hasse::{flag_hasse, hasse, highest_component, Format, HasseDiagram};
pub use notation::{parse_spec, parse_spec_with, render_diagram, render_spec, DiagramSpec, Numbering};
pub use rootsys::{Component, DiagramType, Family, Root, RootSystem};
pub use subsystem::{
    decorated_diagram, direct_subsystem, generate_subsystem, simple_system, DecoratedDiagram, Subsystem,
};
pub use verify::{expected_answer, run_pipeline, sweep, sweep_with, Pipeline, Rules, SweepReport};
