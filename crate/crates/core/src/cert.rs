//! Shared behaviour of verification certificates.
//!
//! Every sweep returns a serializable record whose `violations` list is empty
//! exactly when all of its checks held.

use serde::Serialize;

pub trait Certificate: Serialize {
    /// Stable identifier of the check, e.g. `"filtration-identity"`.
    fn check(&self) -> &str;

    fn violation_count(&self) -> usize;

    fn passed(&self) -> bool {
        self.violation_count() == 0
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificates serialize")
    }
}
