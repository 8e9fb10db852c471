#pragma once

#include "herm3/batch.hpp"
#include "herm3/complex.hpp"
#include "herm3/counting.hpp"
#include "herm3/csv.hpp"
#include "herm3/datagen.hpp"
#include "herm3/dense.hpp"
#include "herm3/hermitian.hpp"
#include "herm3/hm3b.hpp"
#include "herm3/kernels.hpp"
#include "herm3/oracle.hpp"
#include "herm3/rng.hpp"
#include "herm3/stats.hpp"
#include "herm3/stream.hpp"
