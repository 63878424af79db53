//! Placeholder.
pub struct ArrayLayout;
pub struct Instruction;
pub struct MeasurementSchedule;
pub struct QubitEncoding;
