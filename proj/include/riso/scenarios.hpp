#pragma once

#include "riso/world.hpp"

namespace riso {

/// Table, bin, workspace and a rigid + two-pad gripper shared by the built-in
/// scenarios. No objects.
Scenario base_scenario();

/// Three well-separated objects, one per grasp type.
Scenario canonical_scenario();

/// Fifteen household-like objects: three intended for the rigid pinch, twelve
/// for the pads, three of them piles of small items.
Scenario study_scenario();

}  // namespace riso
