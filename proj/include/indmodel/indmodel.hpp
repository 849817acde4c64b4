#pragma once

#include "indmodel/checked.hpp"
#include "indmodel/closure.hpp"
#include "indmodel/constructors.hpp"
#include "indmodel/error.hpp"
#include "indmodel/gen_fn.hpp"
#include "indmodel/model.hpp"
#include "indmodel/model_io.hpp"
#include "indmodel/nat_set.hpp"
#include "indmodel/primes.hpp"
#include "indmodel/reduction.hpp"
#include "indmodel/relation_io.hpp"
#include "indmodel/set_spec.hpp"
#include "indmodel/structure.hpp"
