// Copyright 2026 The lvpbench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lvp/raster.hpp"

namespace lvp {

ImageF RasterImage::to_float() const {
  if (const auto* f = std::get_if<ImageF>(&data_)) return *f;
  const Image8& src = std::get<Image8>(data_);
  std::vector<float> out(src.samples().begin(), src.samples().end());
  return ImageF(src.width(), src.height(), src.channels(), std::move(out));
}

}  // namespace lvp
