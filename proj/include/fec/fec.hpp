#pragma once

#include "fec/extension.hpp"
#include "fec/frames.hpp"
#include "fec/geometry.hpp"
#include "fec/io.hpp"
#include "fec/linalg.hpp"
#include "fec/nodes.hpp"
#include "fec/pde.hpp"
#include "fec/presets.hpp"
