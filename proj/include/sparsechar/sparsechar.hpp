#pragma once

#include "sparsechar/base_field.hpp"
#include "sparsechar/bounds.hpp"
#include "sparsechar/characters.hpp"
#include "sparsechar/config.hpp"
#include "sparsechar/error.hpp"
#include "sparsechar/ext_field.hpp"
#include "sparsechar/fdq.hpp"
#include "sparsechar/harness.hpp"
#include "sparsechar/numtheory.hpp"
#include "sparsechar/parallel.hpp"
#include "sparsechar/polynomial.hpp"
#include "sparsechar/rational.hpp"
#include "sparsechar/sparse_sums.hpp"
#include "sparsechar/text.hpp"
#include "sparsechar/verify.hpp"
