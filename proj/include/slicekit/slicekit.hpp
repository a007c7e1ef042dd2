//===- slicekit.hpp - Umbrella header ---------------------------*- C++ -*-===//

#pragma once

#include "slicekit/amorphous.hpp"
#include "slicekit/ast.hpp"
#include "slicekit/cfg.hpp"
#include "slicekit/cohesion.hpp"
#include "slicekit/conditioned.hpp"
#include "slicekit/dataflow.hpp"
#include "slicekit/dot.hpp"
#include "slicekit/dynamic_slicer.hpp"
#include "slicekit/error.hpp"
#include "slicekit/interpreter.hpp"
#include "slicekit/parser.hpp"
#include "slicekit/pdg.hpp"
#include "slicekit/printer.hpp"
#include "slicekit/slice.hpp"
#include "slicekit/static_slicer.hpp"
#include "slicekit/transform.hpp"
