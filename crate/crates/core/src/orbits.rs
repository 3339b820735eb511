pub struct OrbitRecord;
pub struct BijectionMatch;
