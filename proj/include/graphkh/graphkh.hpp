#pragma once

// Convenience umbrella for the whole library.

#include "graphkh/bit_matrix.hpp"
#include "graphkh/cli.hpp"
#include "graphkh/complex.hpp"
#include "graphkh/errors.hpp"
#include "graphkh/harness.hpp"
#include "graphkh/homology.hpp"
#include "graphkh/io.hpp"
#include "graphkh/labeled_graph.hpp"
#include "graphkh/laurent.hpp"
#include "graphkh/moves.hpp"
#include "graphkh/polynomials.hpp"
#include "graphkh/state_space.hpp"
