/** Dashboard bootstrap: four linked views over the lisakit HTTP API.
 *
 * The cluster map and the network scatterplot are the exploration homes.
 * Hovering either updates the dual-density view; hovering the map also opens
 * a radial tooltip. Double-click pins the same-label component in both
 * views; a second double-click clears it. The scatterplot sits directly
 * above the dual-density view with a shared z x-scale, so the two axes stay
 * pixel-aligned at any window size.
 */

import { ApiClient, ApiError, debounce } from "./api.js";
import { extent, padDomain } from "./scale.js";
import { renderInto } from "./scene.js";
import { Store } from "./state.js";
import type {
  ClusterMapPayload,
  ColorMode,
  FeatureCollection,
  NetworkPayload,
} from "./types.js";
import { ISOLATED_LABEL } from "./types.js";
import { buildDualDensityScene } from "./views/dualDensity.js";
import { buildMapScene } from "./views/map.js";
import { buildRadialScene } from "./views/radial.js";
import { buildScatterHoverScene, buildScatterScene } from "./views/scatter.js";

const HOVER_DEBOUNCE_MS = 50;
const RADIAL_TOOLTIP_SIZE = 220;

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function showBanner(message: string): void {
  const banner = byId("banner");
  banner.textContent = message;
  banner.style.display = "block";
}

class Dashboard {
  private api = new ApiClient();
  private store = new Store();
  private network!: NetworkPayload;
  private cluster!: ClusterMapPayload;
  private geometry!: FeatureCollection;
  private labelsById = new Map<string, string>();
  private zDomain: [number, number] = [-1, 1];
  private lagDomain: [number, number] = [-1, 1];
  private lastDualDensityId: string | null = null;

  async start(): Promise<void> {
    const [meta, geometry, cluster, network] = await Promise.all([
      this.api.meta(),
      this.api.geometry(),
      this.api.clusterMap(),
      this.api.network(),
    ]);
    this.geometry = geometry.geometry;
    this.cluster = cluster;
    this.network = network;
    this.labelsById = new Map(cluster.entries.map((e) => [e.id, e.label]));
    byId("title").textContent = `${meta.datasetName} — ${meta.regionCount} regions`;
    this.zDomain = padDomain(extent(network.points.map((p) => p.z)), 0.08);
    this.lagDomain = padDomain(extent(network.points.map((p) => p.lag)), 0.08);

    this.renderLegend();
    this.renderStatic();
    this.wireEvents();
    this.store.subscribe(() => this.renderStatic());
    window.addEventListener("resize", () => this.renderStatic());

    const first = network.points[0];
    if (first) await this.showDualDensity(first.id);
  }

  private sizes() {
    const mapBox = byId("map-panel").getBoundingClientRect();
    const scatterBox = byId("scatter-panel").getBoundingClientRect();
    const densityBox = byId("density-panel").getBoundingClientRect();
    return {
      map: { width: Math.max(320, mapBox.width), height: Math.max(300, mapBox.height) },
      scatter: { width: Math.max(320, scatterBox.width), height: Math.max(240, scatterBox.height) },
      density: { width: Math.max(320, densityBox.width), height: Math.max(260, densityBox.height) },
    };
  }

  private renderLegend(): void {
    const legend = byId("legend");
    legend.replaceChildren();
    for (const [label, color] of Object.entries(this.cluster.legend)) {
      const item = document.createElement("span");
      item.className = "legend-item";
      const swatch = document.createElement("i");
      swatch.style.background = color;
      item.append(swatch, document.createTextNode(label));
      legend.append(item);
    }
  }

  private renderStatic(): void {
    const state = this.store.get();
    const sizes = this.sizes();
    const mapSvg = byId("map-svg");
    mapSvg.setAttribute("viewBox", `0 0 ${sizes.map.width} ${sizes.map.height}`);
    renderInto(mapSvg, [
      buildMapScene(this.geometry, this.cluster, {
        width: sizes.map.width,
        height: sizes.map.height,
        hoveredId: state.hoveredId,
        pinned: state.pinnedComponent,
      }),
    ]);
    const scatterSvg = byId("scatter-svg");
    scatterSvg.setAttribute("viewBox", `0 0 ${sizes.scatter.width} ${sizes.scatter.height}`);
    const layers = [
      buildScatterScene(this.network, {
        ...sizes.scatter,
        zDomain: this.zDomain,
        lagDomain: this.lagDomain,
        legend: this.cluster.legend,
        pinned: state.pinnedComponent,
      }),
    ];
    if (state.hoveredId && this.labelsById.get(state.hoveredId) !== ISOLATED_LABEL) {
      layers.push(
        buildScatterHoverScene(this.network, state.hoveredId, {
          ...sizes.scatter,
          zDomain: this.zDomain,
          lagDomain: this.lagDomain,
          legend: this.cluster.legend,
        }),
      );
    }
    renderInto(scatterSvg, layers);
  }

  private async showDualDensity(id: string): Promise<void> {
    const panel = byId("density-notice");
    if (this.labelsById.get(id) === ISOLATED_LABEL) {
      panel.textContent = `region ${id}: isolated — no neighbors`;
      panel.style.display = "block";
      return;
    }
    try {
      const payload = await this.api.dualDensity(id, this.store.get().colorMode);
      panel.style.display = "none";
      this.lastDualDensityId = id;
      const sizes = this.sizes();
      const svg = byId("density-svg");
      svg.setAttribute("viewBox", `0 0 ${sizes.density.width} ${sizes.density.height}`);
      renderInto(svg, [
        buildDualDensityScene(payload, {
          ...sizes.density,
          zDomain: this.zDomain,
          legend: this.cluster.legend,
        }),
      ]);
    } catch (error) {
      if ((error as Error).name === "AbortError") return;
      showBanner(`dual-density request failed: ${(error as Error).message}`);
    }
  }

  private async showRadialTooltip(id: string, clientX: number, clientY: number): Promise<void> {
    const tooltip = byId("radial-tooltip");
    if (this.labelsById.get(id) === ISOLATED_LABEL) {
      tooltip.style.display = "block";
      tooltip.style.left = `${clientX + 14}px`;
      tooltip.style.top = `${clientY + 14}px`;
      tooltip.replaceChildren(document.createTextNode(`region ${id}: isolated — no neighbors`));
      return;
    }
    try {
      const payload = await this.api.radial(id);
      const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
      svg.setAttribute("width", String(RADIAL_TOOLTIP_SIZE));
      svg.setAttribute("height", String(RADIAL_TOOLTIP_SIZE));
      renderInto(svg, [buildRadialScene(payload, { size: RADIAL_TOOLTIP_SIZE })]);
      tooltip.replaceChildren(svg);
      tooltip.style.display = "block";
      tooltip.style.left = `${clientX + 14}px`;
      tooltip.style.top = `${clientY + 14}px`;
    } catch (error) {
      if ((error as Error).name === "AbortError") return;
      showBanner(`radial request failed: ${(error as Error).message}`);
    }
  }

  private hideRadialTooltip(): void {
    byId("radial-tooltip").style.display = "none";
  }

  private wireEvents(): void {
    const debouncedDetail = debounce((id: string, fromMap: boolean, x: number, y: number) => {
      void this.showDualDensity(id);
      if (fromMap) void this.showRadialTooltip(id, x, y);
    }, HOVER_DEBOUNCE_MS);

    const hoverTarget = (event: Event): string | null =>
      (event.target as Element).closest("[data-id]")?.getAttribute("data-id") ?? null;

    for (const [panelId, fromMap] of [
      ["map-svg", true],
      ["scatter-svg", false],
    ] as const) {
      const panel = byId(panelId);
      panel.addEventListener("mousemove", (event) => {
        const id = hoverTarget(event);
        if (!id) return;
        if (id !== this.store.get().hoveredId) {
          this.store.setHover(id);
          debouncedDetail(id, fromMap, (event as MouseEvent).clientX, (event as MouseEvent).clientY);
        }
      });
      panel.addEventListener("mouseleave", () => {
        // Drop-lines and the tooltip go away; the dual-density view keeps
        // showing the last hovered result.
        this.store.setHover(null);
        this.hideRadialTooltip();
      });
      panel.addEventListener("dblclick", (event) => {
        const id = hoverTarget(event);
        const focal = id ?? this.store.get().pinnedFocal;
        if (!focal) return;
        void this.store.toggleComponentPin(focal, (rid) => this.api.component(rid));
      });
    }

    const toggle = byId("color-mode") as HTMLSelectElement;
    toggle.addEventListener("change", () => {
      this.store.setColorMode(toggle.value as ColorMode);
      // Relabel the density areas for the current selection; results are
      // unchanged so nothing else refetches.
      if (this.lastDualDensityId) void this.showDualDensity(this.lastDualDensityId);
    });
  }
}

new Dashboard().start().catch((error: Error) => {
  const hint = error instanceof ApiError ? ` (HTTP ${error.status})` : "";
  showBanner(`cannot reach the analysis service${hint}: ${error.message}`);
});
