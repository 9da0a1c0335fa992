#pragma once

// Umbrella header for the ring-topology stabilizer code simulator.

#include "ringqec/bitvec.hpp"
#include "ringqec/code.hpp"
#include "ringqec/decoder.hpp"
#include "ringqec/errors.hpp"
#include "ringqec/experiment.hpp"
#include "ringqec/noise.hpp"
#include "ringqec/pauli.hpp"
#include "ringqec/rng.hpp"
#include "ringqec/schedule.hpp"
#include "ringqec/syndrome_sim.hpp"
